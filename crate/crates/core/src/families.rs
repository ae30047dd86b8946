//! Closed-formula spectral tables for the six scheme families, closed-form
//! Krein expressions, and the closed-form-versus-spectral-sum verification
//! drive.
//!
//! Closed forms are evaluated only at targets inside the declared support
//! band and inside the index domain; outside, the value is zero by the
//! support rule rather than by formula evaluation, because some formula
//! denominators vanish at index combinations the support never reaches.

use crate::exact::{binomial, gl_order, q_binomial, q_number_signed, q_pow, Rational};
use crate::orthopoly::{eberlein, gen_eberlein, gen_krawtchouk, h_star, hahn, krawtchouk, q_hahn};
use crate::scheme::{
    check_q_polynomial, table_violations, Domain, MissingRaising, MonomialOrder, MultiIndex,
    SpectralTable, Tensor3,
};
use num::bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// Identifies one scheme instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilyParams {
    Hamming { n: i64, q: i64 },
    Johnson { n: i64, k: i64 },
    Bilinear { n: i64, l: i64, q: i64 },
    Grassmann { n: i64, m: i64, q: i64 },
    NonbinaryJohnson { r: i64, n: i64, k: i64 },
    Attenuated { n: i64, m: i64, l: i64, q: i64 },
}

impl FamilyParams {
    pub fn table(&self) -> Result<SpectralTable, FamilyError> {
        match *self {
            FamilyParams::Hamming { n, q } => hamming_table(n, q),
            FamilyParams::Johnson { n, k } => johnson_table(n, k),
            FamilyParams::Bilinear { n, l, q } => bilinear_table(n, l, q),
            FamilyParams::Grassmann { n, m, q } => grassmann_table(n, m, q),
            FamilyParams::NonbinaryJohnson { r, n, k } => nonbinary_johnson_table(r, n, k),
            FamilyParams::Attenuated { n, m, l, q } => attenuated_table(n, m, l, q),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            FamilyParams::Hamming { n, q } => format!("hamming n={n} q={q}"),
            FamilyParams::Johnson { n, k } => format!("johnson n={n} k={k}"),
            FamilyParams::Bilinear { n, l, q } => format!("bilinear n={n} l={l} q={q}"),
            FamilyParams::Grassmann { n, m, q } => format!("grassmann n={n} m={m} q={q}"),
            FamilyParams::NonbinaryJohnson { r, n, k } => format!("nbj r={r} n={n} k={k}"),
            FamilyParams::Attenuated { n, m, l, q } => {
                format!("attenuated n={n} m={m} l={l} q={q}")
            }
        }
    }
}

// Keeps every exponent expression (products of two parameters) well inside
// u32 range; far beyond any desk-scale instance anyway.
const MAX_PARAM: i64 = 4096;

fn params_in_range(values: &[i64]) -> bool {
    values.iter().all(|&v| v <= MAX_PARAM)
}

fn rat(v: i64) -> Rational {
    Rational::from_int(v)
}

fn ratb(v: BigInt) -> Rational {
    Rational::from_bigint(v)
}

fn invalid(msg: String) -> FamilyError {
    FamilyError::InvalidParams(msg)
}

fn assemble(
    label: String,
    size: BigInt,
    relations: Domain,
    idempotents: Domain,
    p: Vec<Vec<Rational>>,
    q: Vec<Vec<Rational>>,
    valencies: Vec<BigInt>,
    multiplicities: Vec<BigInt>,
    reduction: Option<String>,
) -> SpectralTable {
    let t = SpectralTable {
        label,
        size,
        relations,
        idempotents,
        p,
        q,
        valencies,
        multiplicities,
        reduction,
    };
    let violations = table_violations(&t);
    assert!(
        violations.is_empty(),
        "inconsistent spectral data for {}: {:?}",
        t.label,
        violations
    );
    t
}

/// Hamming scheme H(n,q): |X| = q^n, P = Q = Krawtchouk matrix.
pub fn hamming_table(n: i64, q: i64) -> Result<SpectralTable, FamilyError> {
    if !params_in_range(&[n, q]) {
        return Err(invalid("hamming parameters out of range: the cap is 4096 per parameter".into()));
    }
    if n < 1 || q < 2 {
        return Err(invalid(format!("hamming needs n >= 1 and q >= 2, got n={n} q={q}")));
    }
    let dom = Domain::range_1d(n);
    let entries: Vec<Vec<Rational>> = (0..=n)
        .map(|i| (0..=n).map(|j| krawtchouk(i, n, q, j)).collect())
        .collect();
    let weights: Vec<BigInt> = (0..=n)
        .map(|i| BigInt::from(q - 1).pow(i as u32) * binomial(n, i))
        .collect();
    Ok(assemble(
        format!("hamming n={n} q={q}"),
        BigInt::from(q).pow(n as u32),
        dom.clone(),
        dom,
        entries.clone(),
        entries,
        weights.clone(),
        weights,
        None,
    ))
}

/// Johnson scheme J(n,k): |X| = C(n,k), P = Eberlein, Q = Hahn.
pub fn johnson_table(n: i64, k: i64) -> Result<SpectralTable, FamilyError> {
    if !params_in_range(&[n, k]) {
        return Err(invalid("johnson parameters out of range: the cap is 4096 per parameter".into()));
    }
    if !(0 < k && k < n) {
        return Err(invalid(format!("johnson needs 0 < k < n, got n={n} k={k}")));
    }
    let d = k.min(n - k);
    let dom = Domain::range_1d(d);
    let p: Vec<Vec<Rational>> = (0..=d)
        .map(|i| (0..=d).map(|j| eberlein(i, n, k, j)).collect())
        .collect();
    let q: Vec<Vec<Rational>> = (0..=d)
        .map(|j| (0..=d).map(|i| hahn(j, n, k, i)).collect())
        .collect();
    let valencies: Vec<BigInt> = (0..=d).map(|i| binomial(k, i) * binomial(n - k, i)).collect();
    let multiplicities: Vec<BigInt> = (0..=d).map(|j| binomial(n, j) - binomial(n, j - 1)).collect();
    Ok(assemble(
        format!("johnson n={n} k={k}"),
        binomial(n, k),
        dom.clone(),
        dom,
        p,
        q,
        valencies,
        multiplicities,
        None,
    ))
}

/// Bilinear forms scheme H_q(n,l): |X| = q^{nl}, self-dual generalized
/// Krawtchouk eigenmatrices.
pub fn bilinear_table(n: i64, l: i64, q: i64) -> Result<SpectralTable, FamilyError> {
    if !params_in_range(&[n, l, q]) {
        return Err(invalid("bilinear parameters out of range: the cap is 4096 per parameter".into()));
    }
    if n < 1 || l < 1 || q < 2 {
        return Err(invalid(format!(
            "bilinear needs n, l >= 1 and q >= 2, got n={n} l={l} q={q}"
        )));
    }
    let d = n.min(l);
    let dom = Domain::range_1d(d);
    let entries: Vec<Vec<Rational>> = (0..=d)
        .map(|i| (0..=d).map(|j| gen_krawtchouk(i, n, l, q, j)).collect())
        .collect();
    let weights: Vec<BigInt> = (0..=d)
        .map(|i| q_binomial(n, i, q) * q_binomial(l, i, q) * gl_order(i, q))
        .collect();
    Ok(assemble(
        format!("bilinear n={n} l={l} q={q}"),
        BigInt::from(q).pow((n * l) as u32),
        dom.clone(),
        dom,
        entries.clone(),
        entries,
        weights.clone(),
        weights,
        None,
    ))
}

/// Grassmann scheme Gr_q(n,m): |X| = [n choose m]_q, P = generalized
/// Eberlein, Q = q-Hahn.
pub fn grassmann_table(n: i64, m: i64, q: i64) -> Result<SpectralTable, FamilyError> {
    if !params_in_range(&[n, m, q]) {
        return Err(invalid("grassmann parameters out of range: the cap is 4096 per parameter".into()));
    }
    if !(0 < m && m < n) || q < 2 {
        return Err(invalid(format!(
            "grassmann needs 0 < m < n and q >= 2, got n={n} m={m} q={q}"
        )));
    }
    let d = m.min(n - m);
    let dom = Domain::range_1d(d);
    let p: Vec<Vec<Rational>> = (0..=d)
        .map(|i| (0..=d).map(|j| gen_eberlein(i, n, m, q, j)).collect())
        .collect();
    let qm: Vec<Vec<Rational>> = (0..=d)
        .map(|j| (0..=d).map(|i| q_hahn(j, n, m, q, i)).collect())
        .collect();
    let valencies: Vec<BigInt> = (0..=d)
        .map(|i| BigInt::from(q).pow((i * i) as u32) * q_binomial(n - m, i, q) * q_binomial(m, i, q))
        .collect();
    let multiplicities: Vec<BigInt> = (0..=d)
        .map(|j| q_binomial(n, j, q) - q_binomial(n, j - 1, q))
        .collect();
    Ok(assemble(
        format!("grassmann n={n} m={m} q={q}"),
        q_binomial(n, m, q),
        dom.clone(),
        dom,
        p,
        qm,
        valencies,
        multiplicities,
        None,
    ))
}

/// Relation/idempotent index domain of the nonbinary Johnson scheme
/// J_r(n,k): pairs (i,j) with i+j <= k and j <= min(k, n-k). At the
/// boundary r = 2 the first coordinate collapses to zero.
pub fn nbj_domain(r: i64, n: i64, k: i64) -> Domain {
    let cap_i = if r == 2 { 0 } else { k };
    let cap_j = k.min(n - k);
    let mut members = Vec::new();
    for i in 0..=cap_i {
        for j in 0..=cap_j {
            if i + j <= k {
                members.push(MultiIndex::pair(i as u32, j as u32));
            }
        }
    }
    Domain::new(2, members)
}

/// Nonbinary Johnson scheme J_r(n,k) on weight-k vectors over an r-letter
/// alphabet. The first index coordinate counts within-support disagreements
/// (Hamming-like), the second counts support moves (Johnson-like).
pub fn nonbinary_johnson_table(r: i64, n: i64, k: i64) -> Result<SpectralTable, FamilyError> {
    if !params_in_range(&[r, n, k]) {
        return Err(invalid("nonbinary Johnson parameters out of range: the cap is 4096 per parameter".into()));
    }
    if r < 2 || k < 1 || k > n {
        return Err(invalid(format!(
            "nonbinary Johnson needs r >= 2 and 1 <= k <= n, got r={r} n={n} k={k}"
        )));
    }
    let reduction = match (r, n == k) {
        (2, false) => Some("johnson".to_string()),
        (2, true) => Some("johnson+hamming".to_string()),
        (_, true) => Some("hamming".to_string()),
        _ => None,
    };
    let dom = nbj_domain(r, n, k);
    let pairs: Vec<(i64, i64)> = dom.members().iter().map(|m| m.as_pair()).collect();
    let p: Vec<Vec<Rational>> = pairs
        .iter()
        .map(|&(i, j)| {
            pairs
                .iter()
                .map(|&(x, y)| {
                    q_pow(r - 1, j) * krawtchouk(i, k - j, r - 1, x) * eberlein(j, n - x, k - x, y)
                })
                .collect()
        })
        .collect();
    let q: Vec<Vec<Rational>> = pairs
        .iter()
        .map(|&(i, j)| {
            let pref = ratb(binomial(n, i)) / ratb(binomial(k, i));
            pairs
                .iter()
                .map(|&(x, y)| &pref * krawtchouk(i, k - y, r - 1, x) * hahn(j, n - i, k - i, y))
                .collect()
        })
        .collect();
    let valencies: Vec<BigInt> = pairs
        .iter()
        .map(|&(i, j)| {
            BigInt::from(r - 1).pow(j as u32)
                * BigInt::from(r - 2).pow(i as u32)
                * binomial(k - j, i)
                * binomial(k, j)
                * binomial(n - k, j)
        })
        .collect();
    let multiplicities: Vec<BigInt> = pairs
        .iter()
        .map(|&(i, j)| {
            BigInt::from(r - 2).pow(i as u32)
                * binomial(n, i)
                * (binomial(n - i, j) - binomial(n - i, j - 1))
        })
        .collect();
    Ok(assemble(
        format!("nbj r={r} n={n} k={k}"),
        BigInt::from(r - 1).pow(k as u32) * binomial(n, k),
        dom.clone(),
        dom,
        p,
        q,
        valencies,
        multiplicities,
        reduction,
    ))
}

/// Relation/idempotent index domain of the attenuated-space scheme: pairs
/// (i,j) with j <= min(m, n-m) and i <= min(m-j, l). The second coordinate
/// is the Grassmann distance of the quotients mod W; the first is the rank
/// of the section difference over the common quotient part.
pub fn attenuated_domain(n: i64, m: i64, l: i64) -> Domain {
    let mut members = Vec::new();
    for j in 0..=m.min(n - m) {
        for i in 0..=(m - j).min(l) {
            members.push(MultiIndex::pair(i as u32, j as u32));
        }
    }
    Domain::new(2, members)
}

/// Attenuated-space scheme on m-dimensional subspaces of F_q^{n+l} meeting
/// a fixed l-dimensional W trivially.
pub fn attenuated_table(n: i64, m: i64, l: i64, q: i64) -> Result<SpectralTable, FamilyError> {
    if !params_in_range(&[n, m, l, q]) {
        return Err(invalid("attenuated parameters out of range: the cap is 4096 per parameter".into()));
    }
    if !(1 <= m && m <= n) || l < 1 || q < 2 {
        return Err(invalid(format!(
            "attenuated needs 1 <= m <= n, l >= 1, q >= 2, got n={n} m={m} l={l} q={q}"
        )));
    }
    let reduction = (m == n).then(|| "bilinear".to_string());
    let dom = attenuated_domain(n, m, l);
    let pairs: Vec<(i64, i64)> = dom.members().iter().map(|m| m.as_pair()).collect();
    let p: Vec<Vec<Rational>> = pairs
        .iter()
        .map(|&(i, j)| {
            pairs
                .iter()
                .map(|&(x, y)| {
                    q_pow(q, j * l)
                        * gen_krawtchouk(i, m - j, l, q, x)
                        * gen_eberlein(j, n - x, m - x, q, y)
                })
                .collect()
        })
        .collect();
    let qmat: Vec<Vec<Rational>> = pairs
        .iter()
        .map(|&(i, j)| {
            let pref = ratb(q_binomial(n, m, q)) / ratb(q_binomial(n - i, m - i, q));
            pairs
                .iter()
                .map(|&(x, y)| {
                    &pref * gen_krawtchouk(i, m - y, l, q, x) * q_hahn(j, n - i, m - i, q, y)
                })
                .collect()
        })
        .collect();
    let valencies: Vec<BigInt> = pairs
        .iter()
        .map(|&(i, j)| {
            BigInt::from(q).pow((j * l) as u32)
                * q_binomial(m - j, i, q)
                * q_binomial(l, i, q)
                * gl_order(i, q)
                * BigInt::from(q).pow((j * j) as u32)
                * q_binomial(n - m, j, q)
                * q_binomial(m, j, q)
        })
        .collect();
    let multiplicities: Vec<BigInt> = pairs
        .iter()
        .map(|&(i, j)| {
            let pref = ratb(q_binomial(n, m, q)) / ratb(q_binomial(n - i, m - i, q));
            let v = pref
                * ratb(q_binomial(m, i, q) * q_binomial(l, i, q) * gl_order(i, q))
                * ratb(q_binomial(n - i, j, q) - q_binomial(n - i, j - 1, q));
            v.as_integer()
                .unwrap_or_else(|| panic!("non-integral multiplicity at ({i},{j})"))
        })
        .collect();
    Ok(assemble(
        format!("attenuated n={n} m={m} l={l} q={q}"),
        BigInt::from(q).pow((m * l) as u32) * q_binomial(n, m, q),
        dom.clone(),
        dom,
        p,
        qmat,
        valencies,
        multiplicities,
        reduction,
    ))
}

/// Krein numbers q^s_{1i} of the Hamming scheme H(k-y, r-1).
pub fn hamming_closed_krein(k: i64, y: i64, r: i64, i: i64, s: i64) -> Rational {
    let nn = k - y;
    assert!(nn >= 0 && r >= 2, "invalid Hamming parameters");
    assert!(
        (0..=nn).contains(&i) && (0..=nn).contains(&s),
        "index outside the class range of H({nn},{})",
        r - 1
    );
    match s - i {
        -1 => rat(k - y - i + 1) * rat(r - 2),
        0 => rat(i) * rat(r - 3),
        1 => rat(i + 1),
        _ => Rational::zero(),
    }
}

/// The diagonal term of the degree-one Johnson Krein row for J(nn,kk).
pub fn johnson_a_star(nn: i64, kk: i64, j: i64) -> Rational {
    let t1num = rat(kk - j) * rat(nn - j + 1) * rat(nn - kk - j);
    // both factors of the denominator's zero vanish in the numerator first
    let t1 = if t1num.is_zero() { Rational::zero() } else { t1num / rat(nn - 2 * j) };
    let t2 = rat(j) * rat(kk - j + 1) * rat(nn - kk - j + 1) / rat(nn - 2 * j + 2);
    rat(nn - 1) - rat(nn) * rat(nn - 1) / (rat(kk) * rat(nn - kk) * rat(nn - 2 * j + 1)) * (t1 + t2)
}

fn johnson_krein_slice(nn: i64, kk: i64, j: i64, s: i64) -> Rational {
    match s - j {
        -1 => {
            rat(nn) * rat(nn - 1) * rat(kk - j + 1) * rat(nn - j + 2) * rat(nn - kk - j + 1)
                / (rat(kk) * rat(nn - kk) * rat(nn - 2 * j + 2) * rat(nn - 2 * j + 3))
        }
        0 => johnson_a_star(nn, kk, j),
        1 => {
            rat(nn) * rat(nn - 1) * rat(j + 1) * rat(kk - j) * rat(nn - kk - j)
                / (rat(kk) * rat(nn - kk) * rat(nn - 2 * j) * rat(nn - 2 * j - 1))
        }
        _ => Rational::zero(),
    }
}

/// Krein numbers q^s_{1j} of the Johnson scheme J(n-i, k-i).
pub fn johnson_closed_krein(n: i64, k: i64, i: i64, j: i64, s: i64) -> Rational {
    let nn = n - i;
    let kk = k - i;
    assert!(kk >= 1 && nn - kk >= 1, "degenerate Johnson parameters J({nn},{kk})");
    let d = kk.min(nn - kk);
    assert!(
        (0..=d).contains(&j) && (0..=d).contains(&s),
        "index outside the class range of J({nn},{kk})"
    );
    johnson_krein_slice(nn, kk, j, s)
}

/// Krein numbers q^s_{1i} of the bilinear forms scheme H_q(m-y, l).
pub fn bilinear_closed_krein(m: i64, y: i64, l: i64, q: i64, i: i64, s: i64) -> Rational {
    let nn = m - y;
    assert!(nn >= 0 && l >= 0 && q >= 2, "invalid bilinear parameters");
    let d = nn.min(l);
    assert!(
        (0..=d).contains(&i) && (0..=d).contains(&s),
        "index outside the class range of H_{q}({nn},{l})"
    );
    let qs = |a: i64| q_number_signed(a, q);
    match s - i {
        -1 => q_pow(q, 2 * i - 2) * rat(q - 1) * qs(l - i + 1) * qs(nn - i + 1),
        0 => qs(i) * (q_pow(q, nn) + q_pow(q, l) - q_pow(q, i) - q_pow(q, i - 1) - Rational::one()),
        1 => q_pow(q, i) * qs(i + 1),
        _ => Rational::zero(),
    }
}

/// B*-component of the Grassmann Krein row for Gr_q(nn,mm).
pub fn grassmann_b_star(nn: i64, mm: i64, q: i64, j: i64) -> Rational {
    let qs = |a: i64| q_number_signed(a, q);
    let num = qs(mm - j) * qs(nn - j + 1) * qs(nn - mm - j);
    if num.is_zero() {
        return Rational::zero();
    }
    num / (q_pow(q, j) * qs(nn - 2 * j) * qs(nn - 2 * j + 1))
}

/// C*-component of the Grassmann Krein row for Gr_q(nn,mm).
pub fn grassmann_c_star(nn: i64, mm: i64, q: i64, j: i64) -> Rational {
    let qs = |a: i64| q_number_signed(a, q);
    let num = qs(j) * qs(nn - mm - j + 1) * qs(mm - j + 1);
    if num.is_zero() {
        return Rational::zero();
    }
    num / (q_pow(q, j) * qs(nn - 2 * j + 2) * qs(nn - 2 * j + 1))
}

/// A*-component: the sum rule A* = [nn-mm][mm]/[nn] - B* - C*.
pub fn grassmann_a_star(nn: i64, mm: i64, q: i64, j: i64) -> Rational {
    let qs = |a: i64| q_number_signed(a, q);
    qs(nn - mm) * qs(mm) / qs(nn) - grassmann_b_star(nn, mm, q, j) - grassmann_c_star(nn, mm, q, j)
}

/// Krein numbers q^t_{1j} of the Grassmann scheme Gr_q(n-i, m-i).
pub fn grassmann_closed_krein(n: i64, m: i64, q: i64, i: i64, j: i64, t: i64) -> Rational {
    let nn = n - i;
    let mm = m - i;
    assert!(mm >= 1 && nn - mm >= 1 && q >= 2, "degenerate Grassmann parameters");
    let d = mm.min(nn - mm);
    assert!(
        (0..=d).contains(&j) && (0..=d).contains(&t),
        "index outside the class range of Gr_{q}({nn},{mm})"
    );
    let h = h_star(nn, mm, q);
    match t - j {
        -1 => h * grassmann_b_star(nn, mm, q, j - 1),
        0 => h * grassmann_a_star(nn, mm, q, j),
        1 => h * grassmann_c_star(nn, mm, q, j + 1),
        _ => Rational::zero(),
    }
}

fn in_nbj_domain(r: i64, n: i64, k: i64, (a, b): (i64, i64)) -> bool {
    a >= 0 && b >= 0 && a + b <= k && b <= k.min(n - k) && (r > 2 || a == 0)
}

/// Closed-form Krein numbers q^{(s,t)}_{eps,(i,j)} of the nonbinary Johnson
/// scheme, for the generator along `axis`.
pub fn nbj_closed_krein(
    r: i64,
    n: i64,
    k: i64,
    axis: usize,
    at: (i64, i64),
    to: (i64, i64),
) -> Rational {
    assert!(r >= 2 && k >= 1 && k <= n);
    assert!(
        in_nbj_domain(r, n, k, at) && in_nbj_domain(r, n, k, to),
        "index outside the domain of J_{r}({n},{k})"
    );
    let gen = if axis == 0 { (1, 0) } else { (0, 1) };
    assert!(in_nbj_domain(r, n, k, gen), "generator along axis {axis} not in the domain");
    let (i, j) = at;
    let (s, t) = to;
    match axis {
        0 => match (s - i, t - j) {
            (1, 0) => rat(n) * rat(i + 1) * rat(k - i - j) / (rat(k) * rat(n - i - 2 * j)),
            (1, -1) => {
                rat(n) * rat(i + 1) * rat(n - k - j + 1) / (rat(k) * rat(n - i - 2 * j + 2))
            }
            (0, 0) => rat(n) * rat(i) * rat(r - 3) / rat(k),
            (-1, 1) => {
                rat(n) * rat(r - 2) * rat(j + 1) * rat(n - k - j) / (rat(k) * rat(n - i - 2 * j))
            }
            (-1, 0) => {
                rat(n) * rat(r - 2) * rat(n - i - j + 2) * rat(k - i - j + 1)
                    / (rat(k) * rat(n - i - 2 * j + 2))
            }
            _ => Rational::zero(),
        },
        1 => match (s - i, t - j) {
            (0, 1) => {
                rat(n) * rat(n - 1) * rat(j + 1) * rat(k - i - j) * rat(n - k - j)
                    / (rat(k) * rat(n - k) * rat(n - i - 2 * j) * rat(n - i - 2 * j - 1))
            }
            (0, 0) => {
                let t1num = rat(k - i - j) * rat(n - i - j + 1) * rat(n - k - j);
                let t1 =
                    if t1num.is_zero() { Rational::zero() } else { t1num / rat(n - i - 2 * j) };
                let t2 = rat(j) * rat(k - i - j + 1) * rat(n - k - j + 1) / rat(n - i - 2 * j + 2);
                rat(n - 1)
                    - rat(n) * rat(n - 1) / (rat(k) * rat(n - k) * rat(n - i - 2 * j + 1))
                        * (t1 + t2)
            }
            (0, -1) => {
                rat(n) * rat(n - 1) * rat(k - i - j + 1) * rat(n - i - j + 2) * rat(n - k - j + 1)
                    / (rat(k) * rat(n - k) * rat(n - i - 2 * j + 2) * rat(n - i - 2 * j + 3))
            }
            _ => Rational::zero(),
        },
        _ => panic!("axis out of range"),
    }
}

fn in_attenuated_domain(n: i64, m: i64, l: i64, (a, b): (i64, i64)) -> bool {
    a >= 0 && b >= 0 && b <= m.min(n - m) && a <= (m - b).min(l)
}

/// Closed-form Krein numbers q^{(s,t)}_{eps,(i,j)} of the attenuated-space
/// scheme, for the generator along `axis`.
pub fn attenuated_closed_krein(
    n: i64,
    m: i64,
    l: i64,
    q: i64,
    axis: usize,
    at: (i64, i64),
    to: (i64, i64),
) -> Rational {
    assert!(1 <= m && m <= n && l >= 1 && q >= 2);
    assert!(
        in_attenuated_domain(n, m, l, at) && in_attenuated_domain(n, m, l, to),
        "index outside the attenuated domain"
    );
    let gen = if axis == 0 { (1, 0) } else { (0, 1) };
    assert!(in_attenuated_domain(n, m, l, gen), "generator along axis {axis} not in the domain");
    let (i, j) = at;
    let (s, t) = to;
    let qs = |a: i64| q_number_signed(a, q);
    let qp = |e: i64| q_pow(q, e);
    match axis {
        0 => match (s - i, t - j) {
            (1, 0) => qp(i) * qs(i + 1) * qs(n) * qs(m - i - j) / (qs(m) * qs(n - i - 2 * j)),
            (1, -1) => {
                qp(m - j + 1) * qs(i + 1) * qs(n) * qs(n - m - j + 1)
                    / (qs(m) * qs(n - i - 2 * j + 2))
            }
            (-1, 0) => {
                qp(2 * i - 2)
                    * rat(q - 1)
                    * qs(l - i + 1)
                    * qs(n)
                    * qs(m - i - j + 1)
                    * qs(n - i - j + 2)
                    / (qs(m) * qs(n - i - 2 * j + 2))
            }
            (-1, 1) => {
                qp(m + i - j - 2) * rat(q - 1) * qs(l - i + 1) * qs(n) * qs(j + 1) * qs(n - m - j)
                    / (qs(m) * qs(n - i - 2 * j))
            }
            (0, -1) => {
                qp(m - j + 1)
                    * rat(q - 1)
                    * qs(n)
                    * qs(i)
                    * qs(m - i - j + 1)
                    * qs(n - m - j + 1)
                    * qs(n - i - j + 2)
                    / (qs(m) * qs(n - i - 2 * j + 2) * qs(n - i - 2 * j + 3))
            }
            (0, 1) => {
                qp(m - j - 1)
                    * rat(q - 1)
                    * qs(n)
                    * qs(i)
                    * qs(j + 1)
                    * qs(n - m - j)
                    * qs(m - i - j)
                    / (qs(m) * qs(n - i - 2 * j) * qs(n - i - 2 * j - 1))
            }
            (0, 0) => {
                let t1num = qs(m - i - j) * qs(n - i - j + 1) * qs(n - m - j);
                let t1 =
                    if t1num.is_zero() { Rational::zero() } else { t1num / qs(n - i - 2 * j) };
                let t2 = qs(j) * qs(n - m - j + 1) * qs(m - i - j + 1) / qs(n - i - 2 * j + 2);
                -qp(m - j) * rat(q - 1) * qs(n) * qs(i) / (qs(m) * qs(n - i - 2 * j + 1))
                    * (t1 + t2)
                    + (qp(m) + qp(l) - qp(i) - qp(i - 1) - Rational::one()) * qs(n) * qs(i) / qs(m)
            }
            _ => Rational::zero(),
        },
        1 => match (s - i, t - j) {
            (0, -1) => {
                qs(n) * qs(n - 1) * qs(m - i - j + 1) * qs(n - m - j + 1) * qs(n - i - j + 2)
                    / (qp(j - 2) * qs(n - m) * qs(m) * qs(n - i - 2 * j + 2) * qs(n - i - 2 * j + 3))
            }
            (0, 1) => {
                qs(n) * qs(n - 1) * qs(j + 1) * qs(n - m - j) * qs(m - i - j)
                    / (qp(j) * qs(n - m) * qs(m) * qs(n - i - 2 * j) * qs(n - i - 2 * j - 1))
            }
            (0, 0) => {
                let t1num = qs(m - i - j) * qs(n - i - j + 1) * qs(n - m - j);
                let t1 =
                    if t1num.is_zero() { Rational::zero() } else { t1num / qs(n - i - 2 * j) };
                let t2 = qs(j) * qs(n - m - j + 1) * qs(m - i - j + 1) / qs(n - i - 2 * j + 2);
                rat(q) * qs(n - 1)
                    - qs(n) * qs(n - 1) / (qp(j - 1) * qs(n - m) * qs(m) * qs(n - i - 2 * j + 1))
                        * (t1 + t2)
            }
            _ => Rational::zero(),
        },
        _ => panic!("axis out of range"),
    }
}

/// One closed-form-versus-spectral-sum discrepancy.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KreinMismatch {
    pub axis: usize,
    pub alpha: MultiIndex,
    pub beta: MultiIndex,
    pub closed: Rational,
    pub generic: Rational,
}

/// Outcome of comparing a family's closed-form Krein expressions against the
/// generic spectral sums on the full generator slices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClosedFormReport {
    pub family: String,
    /// Set at boundary parameters where the instance degenerates to a
    /// classical scheme; checks still run over every direction present.
    pub reduction: Option<String>,
    /// Axes whose generator belongs to the index domain.
    pub directions: Vec<usize>,
    pub comparisons: usize,
    /// Closed form and generic sum disagree inside the declared support.
    pub mismatches: Vec<KreinMismatch>,
    /// Generic sum nonzero outside the declared support set.
    pub support_violations: Vec<KreinMismatch>,
    /// Generic sum nonzero beyond the grlex bound alpha + eps.
    pub order_violations: Vec<KreinMismatch>,
    /// alpha + eps lies in the domain but the raising coefficient vanishes.
    pub missing_raising: Vec<MissingRaising>,
    pub q_polynomial_grlex: bool,
    pub ok: bool,
}

fn nbj_support(axis: usize, (i, j): (i64, i64), (s, t): (i64, i64)) -> bool {
    let delta = (s - i, t - j);
    match axis {
        0 => matches!(delta, (1, 0) | (1, -1) | (0, 0) | (-1, 1) | (-1, 0)),
        _ => matches!(delta, (0, 1) | (0, 0) | (0, -1)),
    }
}

fn attenuated_support(axis: usize, (i, j): (i64, i64), (s, t): (i64, i64)) -> bool {
    let delta = (s - i, t - j);
    match axis {
        0 => matches!(
            delta,
            (1, 0) | (1, -1) | (0, 1) | (0, 0) | (0, -1) | (-1, 1) | (-1, 0)
        ),
        _ => matches!(delta, (0, 1) | (0, 0) | (0, -1)),
    }
}

fn verify_against_closed(
    t: &SpectralTable,
    closed: impl Fn(usize, (i64, i64), (i64, i64)) -> Rational,
    support: impl Fn(usize, (i64, i64), (i64, i64)) -> bool,
) -> ClosedFormReport {
    let krein = Tensor3::krein(t);
    let dom = &t.idempotents;
    let mut report = ClosedFormReport {
        family: t.label.clone(),
        reduction: t.reduction.clone(),
        directions: Vec::new(),
        comparisons: 0,
        mismatches: Vec::new(),
        support_violations: Vec::new(),
        order_violations: Vec::new(),
        missing_raising: Vec::new(),
        q_polynomial_grlex: false,
        ok: false,
    };
    for (axis, gen_pos) in dom.generator_positions().iter().enumerate() {
        let Some(e_pos) = *gen_pos else { continue };
        report.directions.push(axis);
        for (a_pos, alpha) in dom.members().iter().enumerate() {
            let at = alpha.as_pair();
            let bound = alpha.plus_unit(axis);
            for (b_pos, beta) in dom.members().iter().enumerate() {
                let to = beta.as_pair();
                let generic = krein.at(e_pos, a_pos, b_pos).clone();
                let closed_value = closed(axis, at, to);
                report.comparisons += 1;
                let record = || KreinMismatch {
                    axis,
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                    closed: closed_value.clone(),
                    generic: generic.clone(),
                };
                if support(axis, at, to) {
                    if closed_value != generic {
                        report.mismatches.push(record());
                    }
                } else if !generic.is_zero() {
                    report.support_violations.push(record());
                }
                if !generic.is_zero()
                    && MonomialOrder::Grlex.compare(beta, &bound) == Ordering::Greater
                {
                    report.order_violations.push(record());
                }
            }
            if let Some(b_pos) = dom.position(&bound) {
                if krein.at(e_pos, a_pos, b_pos).is_zero() {
                    report.missing_raising.push(MissingRaising { axis, alpha: alpha.clone() });
                }
            }
        }
    }
    report.q_polynomial_grlex = check_q_polynomial(t, MonomialOrder::Grlex, &krein).ok;
    report.ok = report.mismatches.is_empty()
        && report.support_violations.is_empty()
        && report.order_violations.is_empty()
        && report.missing_raising.is_empty()
        && report.q_polynomial_grlex;
    report
}

// Classical (one-variable) families reuse the same driver; the indices read
// as (i, 0) pairs and the support is the tridiagonal band.
fn verify_classical(
    t: &SpectralTable,
    closed: impl Fn(i64, i64) -> Rational,
) -> ClosedFormReport {
    let closed2 = move |_axis: usize, at: (i64, i64), to: (i64, i64)| closed(at.0, to.0);
    let support = |_axis: usize, (i, _): (i64, i64), (s, _): (i64, i64)| (s - i).abs() <= 1;
    verify_against_closed(t, closed2, support)
}

/// Compare a family instance's closed-form Krein expressions against the
/// generic spectral sums on every generator slice, check the declared
/// support sets and the grlex bound, and confirm nonvanishing raising
/// coefficients. Mismatches are report content, not errors.
pub fn verify_closed_forms(params: &FamilyParams) -> Result<ClosedFormReport, FamilyError> {
    let t = params.table()?;
    let report = match *params {
        FamilyParams::NonbinaryJohnson { r, n, k } => verify_against_closed(
            &t,
            |axis, at, to| nbj_closed_krein(r, n, k, axis, at, to),
            nbj_support,
        ),
        FamilyParams::Attenuated { n, m, l, q } => verify_against_closed(
            &t,
            |axis, at, to| attenuated_closed_krein(n, m, l, q, axis, at, to),
            attenuated_support,
        ),
        FamilyParams::Hamming { n, q } => {
            verify_classical(&t, move |i, s| hamming_closed_krein(n, 0, q + 1, i, s))
        }
        FamilyParams::Johnson { n, k } => {
            verify_classical(&t, move |j, s| johnson_closed_krein(n, k, 0, j, s))
        }
        FamilyParams::Bilinear { n, l, q } => {
            verify_classical(&t, move |i, s| bilinear_closed_krein(n, 0, l, q, i, s))
        }
        FamilyParams::Grassmann { n, m, q } => {
            verify_classical(&t, move |j, s| grassmann_closed_krein(n, m, q, 0, j, s))
        }
    };
    Ok(report)
}

//! Ground-truth construction of small schemes from their combinatorial
//! objects, and matrix-level verification of axioms, idempotents and
//! structure constants, independent of every closed formula.

pub mod field;
pub mod subspace;

pub use field::FiniteField;
pub use subspace::{enumerate_subspaces, rank, rref, Subspace};

use crate::exact::{binomial, q_binomial, Rational};
use crate::matrix::RatMatrix;
use crate::scheme::{Domain, MultiIndex, SpectralTable, Tensor3};
use num::bigint::BigInt;
use std::io::{self, Write};
use thiserror::Error;

/// Default cap on oracle instance sizes; dense rational matrix work beyond
/// this is outside desk scale.
pub const DEFAULT_MAX_POINTS: usize = 2000;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("unsupported field order {0}: only prime powers up to 9 are tabulated")]
    UnsupportedField(i64),
    #[error("instance too large: {points} points exceeds the cap of {limit}")]
    TooLarge { points: usize, limit: usize },
    #[error("axiom {axiom} fails: {witness}")]
    Axiom { axiom: &'static str, witness: String },
    #[error("matrix identity {identity} fails at {witness}")]
    MatrixIdentity { identity: &'static str, witness: String },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    pub max_points: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { max_points: DEFAULT_MAX_POINTS }
    }
}

/// A scheme realized on an explicit point set: the relation map, its class
/// domain, and the triple-counted intersection numbers.
#[derive(Clone, Debug)]
pub struct ConcreteScheme {
    pub label: String,
    pub size: usize,
    pub domain: Domain,
    relation: Vec<usize>,
    /// Neighbor lists: adjacency[class][x] = points y with R(x,y) = class.
    adjacency: Vec<Vec<Vec<usize>>>,
    /// Intersection numbers extracted by triple counting.
    pub intersection: Tensor3,
}

impl ConcreteScheme {
    pub fn relation_pos(&self, x: usize, y: usize) -> usize {
        self.relation[x * self.size + y]
    }

    pub fn relation_index(&self, x: usize, y: usize) -> &MultiIndex {
        self.domain.index(self.relation_pos(x, y))
    }

    pub fn neighbors(&self, class_pos: usize, x: usize) -> &[usize] {
        &self.adjacency[class_pos][x]
    }

    pub fn adjacency_matrix(&self, class_pos: usize) -> RatMatrix {
        RatMatrix::from_fn(self.size, self.size, |x, y| {
            if self.relation_pos(x, y) == class_pos {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// Row sum of each adjacency matrix, constant over rows for a valid
    /// scheme (checked during construction via the intersection numbers).
    pub fn valency(&self, class_pos: usize) -> usize {
        self.adjacency[class_pos][0].len()
    }

    /// Plain-text dump: one header line `label |X| classes`, then the
    /// relation matrix as |X| lines of space-separated class labels `i,j`.
    pub fn write_relation_dump(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(out, "{} {} {}", self.label, self.size, self.domain.len())?;
        for x in 0..self.size {
            let row: Vec<String> = (0..self.size)
                .map(|y| {
                    let idx = self.relation_index(x, y);
                    let parts: Vec<String> = idx.0.iter().map(|v| v.to_string()).collect();
                    parts.join(",")
                })
                .collect();
            writeln!(out, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Build a scheme from points and a relation map, verifying the defining
/// axioms: one class per pair with the classes exhausting the domain, the
/// diagonal class, symmetry, and constancy of the triple counts (closure of
/// the adjacency algebra together with commutativity).
pub fn build_concrete_scheme(
    label: String,
    size: usize,
    domain: Domain,
    rel: impl Fn(usize, usize) -> MultiIndex,
    opts: OracleOptions,
) -> Result<ConcreteScheme, OracleError> {
    if size > opts.max_points {
        return Err(OracleError::TooLarge { points: size, limit: opts.max_points });
    }
    let n_classes = domain.len();
    let mut relation = vec![usize::MAX; size * size];
    for x in 0..size {
        for y in 0..size {
            let idx = rel(x, y);
            let pos = domain.position(&idx).ok_or_else(|| OracleError::Axiom {
                axiom: "A1",
                witness: format!("relation value {idx} at ({x},{y}) outside the domain"),
            })?;
            relation[x * size + y] = pos;
        }
    }
    let mut seen = vec![false; n_classes];
    for &pos in &relation {
        seen[pos] = true;
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(OracleError::Axiom {
            axiom: "A1",
            witness: format!("relation map not surjective: class {} empty", domain.index(missing)),
        });
    }
    let origin = domain.origin_position();
    for x in 0..size {
        for y in 0..size {
            let pos = relation[x * size + y];
            if (x == y) != (pos == origin) {
                return Err(OracleError::Axiom {
                    axiom: "A2",
                    witness: format!("diagonal class mismatch at ({x},{y})"),
                });
            }
            if pos != relation[y * size + x] {
                return Err(OracleError::Axiom {
                    axiom: "A3/A6",
                    witness: format!(
                        "R({x},{y}) = {} but R({y},{x}) = {}",
                        domain.index(pos),
                        domain.index(relation[y * size + x])
                    ),
                });
            }
        }
    }
    let mut adjacency = vec![vec![Vec::new(); size]; n_classes];
    for x in 0..size {
        for y in 0..size {
            adjacency[relation[x * size + y]][x].push(y);
        }
    }
    // triple counts: p^k_{ij} = #{z : R(x,z) = i, R(z,y) = j} must be
    // constant over the pairs (x,y) of class k
    let mut counts: Vec<Option<Vec<u64>>> = vec![None; n_classes];
    for x in 0..size {
        for y in 0..size {
            let k = relation[x * size + y];
            let mut histogram = vec![0u64; n_classes * n_classes];
            for z in 0..size {
                let i = relation[x * size + z];
                let j = relation[z * size + y];
                histogram[i * n_classes + j] += 1;
            }
            match &counts[k] {
                None => counts[k] = Some(histogram),
                Some(expect) => {
                    if expect != &histogram {
                        return Err(OracleError::Axiom {
                            axiom: "A4",
                            witness: format!(
                                "triple counts over ({x},{y}) differ from class {}",
                                domain.index(k)
                            ),
                        });
                    }
                }
            }
        }
    }
    let mut intersection = Tensor3::zeros(domain.clone());
    for k in 0..n_classes {
        let histogram = counts[k].as_ref().unwrap();
        for i in 0..n_classes {
            for j in 0..n_classes {
                let v = histogram[i * n_classes + j];
                if v != histogram[j * n_classes + i] {
                    return Err(OracleError::Axiom {
                        axiom: "A5",
                        witness: format!("p^{k}_{{{i},{j}}} != p^{k}_{{{j},{i}}}"),
                    });
                }
                *intersection.at_mut(i, j, k) = Rational::from_int(v as i64);
            }
        }
    }
    Ok(ConcreteScheme { label, size, domain, relation, adjacency, intersection })
}

/// All weight-k vectors over {0, ..., r-1}^n, in a deterministic order:
/// support sets ascending, nonzero values counting up.
pub fn enumerate_nbj_points(r: i64, n: i64, k: i64) -> Vec<Vec<u8>> {
    assert!(r >= 2 && (0..=n).contains(&k));
    let n = n as usize;
    let k = k as usize;
    let mut out = Vec::new();
    let mut support = Vec::with_capacity(k);
    fn go(
        start: usize,
        n: usize,
        k: usize,
        r: u8,
        support: &mut Vec<usize>,
        out: &mut Vec<Vec<u8>>,
    ) {
        if support.len() == k {
            let mut values = vec![1u8; k];
            loop {
                let mut point = vec![0u8; n];
                for (&pos, &v) in support.iter().zip(&values) {
                    point[pos] = v;
                }
                out.push(point);
                let mut t = k;
                loop {
                    if t == 0 {
                        return;
                    }
                    t -= 1;
                    if values[t] + 1 < r {
                        values[t] += 1;
                        for v in values[t + 1..].iter_mut() {
                            *v = 1;
                        }
                        break;
                    }
                }
            }
        }
        for v in start..n {
            support.push(v);
            go(v + 1, n, k, r, support, out);
            support.pop();
        }
    }
    go(0, n, k, r as u8, &mut support, &mut out);
    out
}

/// Relation of the nonbinary Johnson scheme: counts of common and equal
/// nonzero entries give (i, j) with i = c - e and j = k - c.
pub fn nbj_relation(x: &[u8], y: &[u8], k: i64) -> MultiIndex {
    assert_eq!(x.len(), y.len());
    let weight = |v: &[u8]| v.iter().filter(|&&t| t != 0).count() as i64;
    assert!(weight(x) == k && weight(y) == k, "weight mismatch");
    let mut common = 0i64;
    let mut equal = 0i64;
    for (a, b) in x.iter().zip(y) {
        if *a != 0 && *b != 0 {
            common += 1;
            if a == b {
                equal += 1;
            }
        }
    }
    MultiIndex::pair((common - equal) as u32, (k - common) as u32)
}

/// Concrete nonbinary Johnson scheme J_r(n,k), with the point count checked
/// against (r-1)^k C(n,k).
pub fn nbj_concrete(
    r: i64,
    n: i64,
    k: i64,
    opts: OracleOptions,
) -> Result<ConcreteScheme, OracleError> {
    if r < 2 || k < 1 || k > n {
        return Err(OracleError::InvalidParams(format!(
            "nonbinary Johnson needs r >= 2 and 1 <= k <= n, got r={r} n={n} k={k}"
        )));
    }
    let points = enumerate_nbj_points(r, n, k);
    let expect = BigInt::from(r - 1).pow(k as u32) * binomial(n, k);
    assert_eq!(BigInt::from(points.len()), expect, "point count mismatch");
    let domain = crate::families::nbj_domain(r, n, k);
    build_concrete_scheme(
        format!("nbj r={r} n={n} k={k}"),
        points.len(),
        domain,
        |x, y| nbj_relation(&points[x], &points[y], k),
        opts,
    )
}

/// All m-dimensional subspaces of F_q^{n+l} meeting the span of the last l
/// coordinates trivially, with the count checked against q^{ml} [n @ m]_q.
pub fn enumerate_attenuated_points(
    n: i64,
    m: i64,
    l: i64,
    q: i64,
) -> Result<Vec<Subspace>, OracleError> {
    if m < 0 || m > n || l < 1 {
        return Err(OracleError::InvalidParams(format!(
            "attenuated points need 0 <= m <= n and l >= 1, got n={n} m={m} l={l}"
        )));
    }
    let ff = FiniteField::new(q)?;
    let ambient = (n + l) as usize;
    let points: Vec<Subspace> = enumerate_subspaces(&ff, ambient, m as usize)
        .into_iter()
        .filter(|s| {
            // V intersects W trivially iff the projection onto the first n
            // coordinates is injective on V
            let truncated: Vec<Vec<u8>> =
                s.basis.iter().map(|row| row[..n as usize].to_vec()).collect();
            rank(&ff, truncated) == m as usize
        })
        .collect();
    let expect = BigInt::from(q).pow((m * l) as u32) * q_binomial(n, m, q);
    assert_eq!(BigInt::from(points.len()), expect, "attenuated point count mismatch");
    Ok(points)
}

/// Relation of the attenuated-space scheme in the index convention of the
/// spectral data: the second coordinate is the Grassmann distance of the
/// quotients mod W, the first is the remaining defect of the intersection.
pub fn attenuated_relation(
    ff: &FiniteField,
    n: usize,
    m: usize,
    l: usize,
    a: &Subspace,
    b: &Subspace,
) -> MultiIndex {
    let ambient = n + l;
    let mut stacked: Vec<Vec<u8>> = a.basis.clone();
    stacked.extend(b.basis.iter().cloned());
    let rank_vv = rank(ff, stacked.clone());
    for t in 0..l {
        let mut w_row = vec![0u8; ambient];
        w_row[n + t] = 1;
        stacked.push(w_row);
    }
    let rank_vvw = rank(ff, stacked);
    // dim(V/W ∩ V'/W) = 2m + l - rank([V;V';W])
    let j = rank_vvw - m - l;
    // dim(V ∩ V') = 2m - rank([V;V'])
    let cap = 2 * m - rank_vv;
    let i = (m - j) - cap;
    MultiIndex::pair(i as u32, j as u32)
}

/// Concrete attenuated-space scheme.
pub fn attenuated_concrete(
    n: i64,
    m: i64,
    l: i64,
    q: i64,
    opts: OracleOptions,
) -> Result<ConcreteScheme, OracleError> {
    if !(1 <= m && m <= n) || l < 1 {
        return Err(OracleError::InvalidParams(format!(
            "attenuated needs 1 <= m <= n and l >= 1, got n={n} m={m} l={l}"
        )));
    }
    let ff = FiniteField::new(q)?;
    let points = enumerate_attenuated_points(n, m, l, q)?;
    let domain = crate::families::attenuated_domain(n, m, l);
    build_concrete_scheme(
        format!("attenuated n={n} m={m} l={l} q={q}"),
        points.len(),
        domain,
        |x, y| attenuated_relation(&ff, n as usize, m as usize, l as usize, &points[x], &points[y]),
        opts,
    )
}

/// Build the primitive idempotents E_j = (1/|X|) sum_i Q_j(i) A_i and verify
/// every matrix identity they must satisfy: mutual orthogonality,
/// idempotency, summing to the identity, the eigenvalue relations
/// A_i E_j = P_i(j) E_j, and trace E_j = m_j.
pub fn build_idempotents(
    s: &ConcreteScheme,
    t: &SpectralTable,
) -> Result<Vec<RatMatrix>, OracleError> {
    if s.domain != t.relations || s.domain != t.idempotents {
        return Err(OracleError::InvalidParams(
            "concrete scheme and spectral table have different index domains".into(),
        ));
    }
    let n_classes = s.domain.len();
    let size = s.size;
    let inv_size = t.size_rational().recip();
    let idempotents: Vec<RatMatrix> = (0..n_classes)
        .map(|j| {
            let mut e = RatMatrix::zeros(size, size);
            for x in 0..size {
                for y in 0..size {
                    e[(x, y)] = &t.q[j][s.relation_pos(x, y)] * &inv_size;
                }
            }
            e
        })
        .collect();
    // sum to the identity
    let mut total = RatMatrix::zeros(size, size);
    for e in &idempotents {
        total = total.add(e);
    }
    if total != RatMatrix::identity(size) {
        return Err(OracleError::MatrixIdentity {
            identity: "sum E_j = I",
            witness: "total differs from the identity".into(),
        });
    }
    // E at the origin index is J/|X|
    let j0 = s.domain.origin_position();
    if idempotents[j0] != RatMatrix::all_ones(size).scaled(&inv_size) {
        return Err(OracleError::MatrixIdentity {
            identity: "E_o = J/|X|",
            witness: "origin idempotent is not the all-ones projector".into(),
        });
    }
    // A_i E_j = P_i(j) E_j, computed via neighbor sums
    let mut products: Vec<Vec<RatMatrix>> = Vec::with_capacity(n_classes);
    for i in 0..n_classes {
        let mut row = Vec::with_capacity(n_classes);
        for (j, e) in idempotents.iter().enumerate() {
            let prod = RatMatrix::from_fn(size, size, |x, y| {
                let mut acc = Rational::zero();
                for &z in s.neighbors(i, x) {
                    acc += &e[(z, y)];
                }
                acc
            });
            if prod != e.scaled(&t.p[i][j]) {
                return Err(OracleError::MatrixIdentity {
                    identity: "A_i E_j = P_i(j) E_j",
                    witness: format!("i={}, j={}", s.domain.index(i), s.domain.index(j)),
                });
            }
            row.push(prod);
        }
        products.push(row);
    }
    // E_b E_c = delta E_b, assembled from the A E products
    for b in 0..n_classes {
        for c in 0..n_classes {
            let mut prod = RatMatrix::zeros(size, size);
            for i in 0..n_classes {
                let coeff = &t.q[b][i] * &inv_size;
                prod.scaled_add_assign(&coeff, &products[i][c]);
            }
            let expect = if b == c {
                idempotents[b].clone()
            } else {
                RatMatrix::zeros(size, size)
            };
            if prod != expect {
                return Err(OracleError::MatrixIdentity {
                    identity: "E_b E_c = delta_bc E_b",
                    witness: format!("b={}, c={}", s.domain.index(b), s.domain.index(c)),
                });
            }
        }
    }
    // traces are the multiplicities
    for (j, e) in idempotents.iter().enumerate() {
        if e.trace() != Rational::from_bigint(t.multiplicities[j].clone()) {
            return Err(OracleError::MatrixIdentity {
                identity: "trace E_j = m_j",
                witness: format!("j={}", s.domain.index(j)),
            });
        }
    }
    Ok(idempotents)
}

/// Extract the Krein numbers from the Hadamard products of idempotents:
/// expand |X|^2 (E_i o E_j) in the adjacency basis by reading one entry per
/// relation class (verifying constancy), then convert to the idempotent
/// basis through P. Independent of the spectral Krein sum.
pub fn krein_by_hadamard(
    s: &ConcreteScheme,
    t: &SpectralTable,
    idempotents: &[RatMatrix],
) -> Result<Tensor3, OracleError> {
    let n_classes = s.domain.len();
    let size = s.size;
    let size_sq = t.size_rational() * t.size_rational();
    let mut tensor = Tensor3::zeros(s.domain.clone());
    for i in 0..n_classes {
        for j in 0..n_classes {
            // coefficients in the adjacency basis
            let mut coeffs: Vec<Option<Rational>> = vec![None; n_classes];
            for x in 0..size {
                for y in 0..size {
                    let entry =
                        &size_sq * &idempotents[i][(x, y)] * &idempotents[j][(x, y)];
                    let class = s.relation_pos(x, y);
                    match &coeffs[class] {
                        None => coeffs[class] = Some(entry),
                        Some(c) => {
                            if c != &entry {
                                return Err(OracleError::MatrixIdentity {
                                    identity: "Hadamard expansion in the adjacency basis",
                                    witness: format!(
                                        "entry at ({x},{y}) breaks class constancy for (i,j)=({},{})",
                                        s.domain.index(i),
                                        s.domain.index(j)
                                    ),
                                });
                            }
                        }
                    }
                }
            }
            let coeffs: Vec<Rational> = coeffs.into_iter().map(Option::unwrap).collect();
            // |X|^2 E_i o E_j = sum_a c_a A_a = sum_k (sum_a c_a P_a(k)) E_k
            // and the idempotent-basis coefficients are q^k_{ij} |X|
            for k in 0..n_classes {
                let mut acc = Rational::zero();
                for (a, c) in coeffs.iter().enumerate() {
                    acc += &(c * &t.p[a][k]);
                }
                *tensor.at_mut(i, j, k) = acc / t.size_rational();
            }
        }
    }
    Ok(tensor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{attenuated_table, nonbinary_johnson_table};
    use crate::scheme::{intersection_from_spectral, krein_from_spectral};

    #[test]
    fn nbj_point_counts() {
        assert_eq!(enumerate_nbj_points(3, 3, 2).len(), 12);
        assert_eq!(enumerate_nbj_points(2, 3, 3).len(), 1);
        assert_eq!(enumerate_nbj_points(2, 3, 3)[0], vec![1, 1, 1]);
        assert_eq!(enumerate_nbj_points(5, 4, 0).len(), 1);
    }

    #[test]
    fn nbj_relation_examples() {
        let x = [1u8, 1, 0];
        assert_eq!(nbj_relation(&x, &x, 2), MultiIndex::pair(0, 0));
        assert_eq!(nbj_relation(&x, &[1, 2, 0], 2), MultiIndex::pair(1, 0));
        // one equal nonzero entry on one common position: c = 1, e = 1
        assert_eq!(nbj_relation(&x, &[0, 1, 2], 2), MultiIndex::pair(0, 1));
        // one common position with different values: c = 1, e = 0
        assert_eq!(nbj_relation(&x, &[0, 2, 2], 2), MultiIndex::pair(1, 1));
    }

    #[test]
    fn attenuated_point_counts() {
        assert_eq!(enumerate_attenuated_points(2, 1, 1, 2).unwrap().len(), 6);
        assert_eq!(enumerate_attenuated_points(1, 1, 1, 2).unwrap().len(), 2);
        assert_eq!(enumerate_attenuated_points(2, 0, 1, 2).unwrap().len(), 1);
        assert!(enumerate_attenuated_points(2, 1, 1, 6).is_err());
    }

    #[test]
    fn attenuated_relation_examples() {
        let ff = FiniteField::new(2).unwrap();
        // F_2^3 with W spanned by the last coordinate
        let v1 = Subspace { ambient: 3, basis: vec![vec![1, 0, 0]] };
        let v2 = Subspace { ambient: 3, basis: vec![vec![1, 0, 1]] };
        let v3 = Subspace { ambient: 3, basis: vec![vec![0, 1, 0]] };
        assert_eq!(attenuated_relation(&ff, 2, 1, 1, &v1, &v1), MultiIndex::pair(0, 0));
        // same quotient mod W, trivial intersection: one section step apart
        assert_eq!(attenuated_relation(&ff, 2, 1, 1, &v1, &v2), MultiIndex::pair(1, 0));
        // different quotients
        assert_eq!(attenuated_relation(&ff, 2, 1, 1, &v1, &v3), MultiIndex::pair(0, 1));
    }

    #[test]
    fn nbj_oracle_matches_spectral_data() {
        let s = nbj_concrete(3, 3, 2, OracleOptions::default()).unwrap();
        assert_eq!(s.size, 12);
        assert_eq!(s.domain.len(), 5);
        let t = nonbinary_johnson_table(3, 3, 2).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                for k in 0..5 {
                    assert_eq!(
                        s.intersection.at(i, j, k),
                        &intersection_from_spectral(&t, i, j, k),
                        "p^{k}_{{{i},{j}}}"
                    );
                }
            }
        }
        let idem = build_idempotents(&s, &t).unwrap();
        let hadamard = krein_by_hadamard(&s, &t, &idem).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                for k in 0..5 {
                    assert_eq!(
                        hadamard.at(i, j, k),
                        &krein_from_spectral(&t, i, j, k),
                        "q^{k}_{{{i},{j}}}"
                    );
                }
            }
        }
    }

    #[test]
    fn attenuated_oracle_matches_spectral_data() {
        let s = attenuated_concrete(2, 1, 1, 2, OracleOptions::default()).unwrap();
        assert_eq!(s.size, 6);
        assert_eq!(s.domain.len(), 3);
        let t = attenuated_table(2, 1, 1, 2).unwrap();
        let idem = build_idempotents(&s, &t).unwrap();
        let hadamard = krein_by_hadamard(&s, &t, &idem).unwrap();
        let n = s.domain.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    assert_eq!(s.intersection.at(i, j, k), &intersection_from_spectral(&t, i, j, k));
                    assert_eq!(hadamard.at(i, j, k), &krein_from_spectral(&t, i, j, k));
                }
            }
        }
    }

    #[test]
    fn johnson_triple_count_through_the_binary_reduction() {
        // r = 2 realizes the Johnson scheme on binary weight-k vectors;
        // p^0_{11} counts common neighbors of a pair at distance... of the
        // diagonal class, which equals the valency k_1 = 4 for J(4,2)
        let s = nbj_concrete(2, 4, 2, OracleOptions::default()).unwrap();
        let t = crate::families::johnson_table(4, 2).unwrap();
        let one = s.domain.position(&MultiIndex::pair(0, 1)).unwrap();
        let origin = s.domain.origin_position();
        assert_eq!(s.intersection.at(one, one, origin), &Rational::from_int(4));
        assert_eq!(intersection_from_spectral(&t, 1, 1, 0), Rational::from_int(4));
    }

    #[test]
    fn corrupted_relation_breaks_triple_counting() {
        let points = enumerate_nbj_points(3, 3, 2);
        let domain = crate::families::nbj_domain(3, 3, 2);
        // move one symmetric pair into the wrong class: the labeling stays
        // symmetric with the right diagonal, but the triple counts over the
        // polluted class lose their constancy
        let result = build_concrete_scheme(
            "corrupted".into(),
            points.len(),
            domain,
            |x, y| {
                if (x, y) == (0, 1) || (x, y) == (1, 0) {
                    MultiIndex::pair(2, 0)
                } else {
                    nbj_relation(&points[x], &points[y], 2)
                }
            },
            OracleOptions::default(),
        );
        match result {
            Err(OracleError::Axiom { axiom: "A4", .. }) => {}
            other => panic!("expected a triple-count violation, got {other:?}"),
        }
    }

    #[test]
    fn size_guard_trips() {
        let result = nbj_concrete(3, 3, 2, OracleOptions { max_points: 5 });
        match result {
            Err(OracleError::TooLarge { points: 12, limit: 5 }) => {}
            other => panic!("expected the size guard, got {other:?}"),
        }
    }

    #[test]
    fn relation_dump_is_stable() {
        let s = attenuated_concrete(1, 1, 1, 2, OracleOptions::default()).unwrap();
        let mut buf = Vec::new();
        s.write_relation_dump(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let expect = "attenuated n=1 m=1 l=1 q=2 2 2\n0,0 1,0\n1,0 0,0\n";
        assert_eq!(text, expect);
    }
}

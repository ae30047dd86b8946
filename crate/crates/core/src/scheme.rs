//! Generic association-scheme spectral machinery: multi-index domains,
//! monomial orders, spectral tables, Krein and intersection tensors, and the
//! multivariate P/Q-polynomial criteria.

use crate::exact::Rational;
use num::bigint::BigInt;
use num::Signed;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// Tuple of nonnegative integers indexing relations or idempotents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        assert!(!entries.is_empty());
        MultiIndex(entries)
    }

    pub fn single(i: u32) -> Self {
        MultiIndex(vec![i])
    }

    pub fn pair(i: u32, j: u32) -> Self {
        MultiIndex(vec![i, j])
    }

    pub fn origin(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    /// The standard generator with a one in the given axis.
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = vec![0; dim];
        v[axis] = 1;
        MultiIndex(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Total degree |alpha|.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn entry(&self, axis: usize) -> u32 {
        self.0[axis]
    }

    pub fn plus_unit(&self, axis: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v[axis] += 1;
        MultiIndex(v)
    }

    pub fn minus_unit(&self, axis: usize) -> Option<MultiIndex> {
        if self.0[axis] == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[axis] -= 1;
        Some(MultiIndex(v))
    }

    /// Coordinatewise domination: every entry of `other` is at most the
    /// corresponding entry of `self`.
    pub fn dominates(&self, other: &MultiIndex) -> bool {
        assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// View as an (i, j) pair; one-dimensional indices read as (i, 0).
    pub fn as_pair(&self) -> (i64, i64) {
        match self.0.len() {
            1 => (self.0[0] as i64, 0),
            2 => (self.0[0] as i64, self.0[1] as i64),
            d => panic!("as_pair on dimension {d}"),
        }
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn lex_cmp(a: &MultiIndex, b: &MultiIndex) -> Ordering {
    for (x, y) in a.0.iter().zip(&b.0) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn lex_cmp_rev(a: &MultiIndex, b: &MultiIndex) -> Ordering {
    for (x, y) in a.0.iter().rev().zip(b.0.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Monomial comparison strategy on tuples of nonnegative integers.
///
/// The reversed variants are lex and grlex after reversing the coordinate
/// priority (the rightmost coordinate becomes the most significant); they
/// are ordinary monomial orders on the permuted variables, not the graded
/// reverse lexicographic order.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    /// Lexicographic: the leftmost nonzero entry of the difference decides.
    Lex,
    /// Graded lexicographic: total degree first, lex as tiebreak.
    Grlex,
    /// Lexicographic with the coordinate priority reversed.
    RevLex,
    /// Graded lexicographic with the coordinate priority reversed.
    RevGrlex,
}

impl MonomialOrder {
    pub fn compare(self, a: &MultiIndex, b: &MultiIndex) -> Ordering {
        assert_eq!(a.dim(), b.dim(), "monomial order on mismatched dimensions");
        match self {
            MonomialOrder::Lex => lex_cmp(a, b),
            MonomialOrder::Grlex => a.degree().cmp(&b.degree()).then_with(|| lex_cmp(a, b)),
            MonomialOrder::RevLex => lex_cmp_rev(a, b),
            MonomialOrder::RevGrlex => {
                a.degree().cmp(&b.degree()).then_with(|| lex_cmp_rev(a, b))
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::Grlex => "grlex",
            MonomialOrder::RevLex => "revlex",
            MonomialOrder::RevGrlex => "revgrlex",
        }
    }

    /// The four orders the verification suites sweep by default.
    pub const ALL: [MonomialOrder; 4] = [
        MonomialOrder::Grlex,
        MonomialOrder::Lex,
        MonomialOrder::RevGrlex,
        MonomialOrder::RevLex,
    ];
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Finite set of multi-indices, stored in grlex-ascending order.
#[derive(Clone, Debug)]
pub struct Domain {
    dim: usize,
    members: Vec<MultiIndex>,
    lookup: HashMap<MultiIndex, usize>,
}

impl PartialEq for Domain {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.members == other.members
    }
}

impl Eq for Domain {}

impl Domain {
    pub fn new(dim: usize, mut members: Vec<MultiIndex>) -> Domain {
        assert!(members.iter().all(|m| m.dim() == dim));
        members.sort_by(|a, b| MonomialOrder::Grlex.compare(a, b));
        members.dedup();
        let lookup = members
            .iter()
            .enumerate()
            .map(|(pos, m)| (m.clone(), pos))
            .collect();
        Domain { dim, members, lookup }
    }

    /// The range {0, ..., d} as a one-dimensional domain.
    pub fn range_1d(d: i64) -> Domain {
        assert!(d >= 0);
        Domain::new(1, (0..=d as u32).map(MultiIndex::single).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[MultiIndex] {
        &self.members
    }

    pub fn contains(&self, idx: &MultiIndex) -> bool {
        self.lookup.contains_key(idx)
    }

    pub fn position(&self, idx: &MultiIndex) -> Option<usize> {
        self.lookup.get(idx).copied()
    }

    pub fn index(&self, pos: usize) -> &MultiIndex {
        &self.members[pos]
    }

    pub fn origin_position(&self) -> usize {
        self.position(&MultiIndex::origin(self.dim))
            .expect("domain without the origin")
    }

    /// Position of the generator along each axis, when present.
    pub fn generator_positions(&self) -> Vec<Option<usize>> {
        (0..self.dim)
            .map(|axis| self.position(&MultiIndex::unit(self.dim, axis)))
            .collect()
    }

    /// Whether every coordinatewise-dominated index of a member is a member.
    pub fn is_downward_closed(&self) -> bool {
        self.members.iter().all(|m| {
            (0..self.dim).all(|axis| match m.minus_unit(axis) {
                None => true,
                Some(lower) => self.contains(&lower),
            })
        })
    }
}

/// Complete spectral parameter set of a symmetric commutative association
/// scheme, given by closed formulas: index domains, both eigenmatrices,
/// valencies and multiplicities.
#[derive(Clone, Debug)]
pub struct SpectralTable {
    pub label: String,
    /// Number of points |X|.
    pub size: BigInt,
    /// Index set of the adjacency matrices.
    pub relations: Domain,
    /// Index set of the primitive idempotents.
    pub idempotents: Domain,
    /// p[i][j] = P_i(j), the eigenvalue of A_i on E_j.
    pub p: Vec<Vec<Rational>>,
    /// q[j][i] = Q_j(i), the coefficient of A_i in |X| E_j.
    pub q: Vec<Vec<Rational>>,
    pub valencies: Vec<BigInt>,
    pub multiplicities: Vec<BigInt>,
    /// Set when the instance sits at a boundary parameter where the family
    /// degenerates to a classical scheme.
    pub reduction: Option<String>,
}

impl SpectralTable {
    pub fn class_count(&self) -> usize {
        self.relations.len()
    }

    pub fn size_rational(&self) -> Rational {
        Rational::from_bigint(self.size.clone())
    }

    pub fn p_at(&self, i: &MultiIndex, j: &MultiIndex) -> &Rational {
        let ip = self.relations.position(i).expect("relation index");
        let jp = self.idempotents.position(j).expect("idempotent index");
        &self.p[ip][jp]
    }

    pub fn q_at(&self, j: &MultiIndex, i: &MultiIndex) -> &Rational {
        let jp = self.idempotents.position(j).expect("idempotent index");
        let ip = self.relations.position(i).expect("relation index");
        &self.q[jp][ip]
    }
}

/// Structural violations of the spectral-table invariants. Empty means the
/// table is internally consistent.
pub fn table_violations(t: &SpectralTable) -> Vec<String> {
    let mut out = Vec::new();
    let nr = t.relations.len();
    let ni = t.idempotents.len();
    if nr != ni {
        out.push(format!("|I| = {nr} differs from |J| = {ni}"));
        return out;
    }
    if t.p.len() != nr || t.p.iter().any(|row| row.len() != ni) {
        out.push("P has wrong shape".into());
        return out;
    }
    if t.q.len() != ni || t.q.iter().any(|row| row.len() != nr) {
        out.push("Q has wrong shape".into());
        return out;
    }
    let i0 = t.relations.origin_position();
    let j0 = t.idempotents.origin_position();
    for j in 0..ni {
        if t.p[i0][j] != Rational::one() {
            out.push(format!("P_o({}) != 1", t.idempotents.index(j)));
        }
    }
    for i in 0..nr {
        if t.q[j0][i] != Rational::one() {
            out.push(format!("Q_o({}) != 1", t.relations.index(i)));
        }
    }
    for (i, k) in t.valencies.iter().enumerate() {
        if !k.is_positive() {
            out.push(format!("valency k_{} = {k} not positive", t.relations.index(i)));
        }
        if t.p[i][j0] != Rational::from_bigint(k.clone()) {
            out.push(format!("P_{}(o) != k", t.relations.index(i)));
        }
    }
    for (j, m) in t.multiplicities.iter().enumerate() {
        if !m.is_positive() {
            out.push(format!("multiplicity m_{} = {m} not positive", t.idempotents.index(j)));
        }
        if t.q[j][i0] != Rational::from_bigint(m.clone()) {
            out.push(format!("Q_{}(o) != m", t.idempotents.index(j)));
        }
    }
    let ksum: BigInt = t.valencies.iter().sum();
    if ksum != t.size {
        out.push(format!("sum of valencies {ksum} != |X| = {}", t.size));
    }
    let msum: BigInt = t.multiplicities.iter().sum();
    if msum != t.size {
        out.push(format!("sum of multiplicities {msum} != |X| = {}", t.size));
    }
    // P Q = |X| I
    let size = t.size_rational();
    for i in 0..nr {
        for i2 in 0..nr {
            let mut acc = Rational::zero();
            for j in 0..ni {
                acc += &(&t.p[i][j] * &t.q[j][i2]);
            }
            let expect = if i == i2 { size.clone() } else { Rational::zero() };
            if acc != expect {
                out.push(format!(
                    "(PQ)[{},{}] = {acc}, expected {expect}",
                    t.relations.index(i),
                    t.relations.index(i2)
                ));
            }
        }
    }
    // duality of a symmetric scheme: m_j P_i(j) = k_i Q_j(i)
    for i in 0..nr {
        for j in 0..ni {
            let lhs = Rational::from_bigint(t.multiplicities[j].clone()) * &t.p[i][j];
            let rhs = Rational::from_bigint(t.valencies[i].clone()) * &t.q[j][i];
            if lhs != rhs {
                out.push(format!(
                    "duality fails at i={}, j={}",
                    t.relations.index(i),
                    t.idempotents.index(j)
                ));
            }
        }
    }
    out
}

/// Krein number q^k_{ij} from the spectral sum
/// (1/(|X| m_k)) sum_l k_l Q_i(l) Q_j(l) Q_k(l).
pub fn krein_from_spectral(t: &SpectralTable, i: usize, j: usize, k: usize) -> Rational {
    let mut acc = Rational::zero();
    for l in 0..t.relations.len() {
        let w = Rational::from_bigint(t.valencies[l].clone());
        acc += &(w * &t.q[i][l] * &t.q[j][l] * &t.q[k][l]);
    }
    acc / (t.size_rational() * Rational::from_bigint(t.multiplicities[k].clone()))
}

/// Intersection number p^k_{ij} from the dual spectral sum
/// (1/(|X| k_k)) sum_l m_l P_i(l) P_j(l) P_k(l).
pub fn intersection_from_spectral(t: &SpectralTable, i: usize, j: usize, k: usize) -> Rational {
    let mut acc = Rational::zero();
    for l in 0..t.idempotents.len() {
        let w = Rational::from_bigint(t.multiplicities[l].clone());
        acc += &(w * &t.p[i][l] * &t.p[j][l] * &t.p[k][l]);
    }
    acc / (t.size_rational() * Rational::from_bigint(t.valencies[k].clone()))
}

/// Residual of the second-eigenmatrix orthogonality relation
/// sum_l k_l Q_i(l) Q_j(l) - |X| m_i delta_ij. Zero for every valid table.
pub fn orthogonality_residual(t: &SpectralTable, i: usize, j: usize) -> Rational {
    let mut acc = Rational::zero();
    for l in 0..t.relations.len() {
        let w = Rational::from_bigint(t.valencies[l].clone());
        acc += &(w * &t.q[i][l] * &t.q[j][l]);
    }
    let expect = if i == j {
        t.size_rational() * Rational::from_bigint(t.multiplicities[i].clone())
    } else {
        Rational::zero()
    };
    acc - expect
}

/// Dense 3-index tensor over a domain; entry (i, j, k) reads as the
/// structure constant with subscripts i, j and superscript k.
#[derive(Clone, Debug)]
pub struct Tensor3 {
    pub domain: Domain,
    data: Vec<Rational>,
}

pub type KreinTensor = Tensor3;
pub type IntersectionTensor = Tensor3;

impl Tensor3 {
    pub fn zeros(domain: Domain) -> Tensor3 {
        let n = domain.len();
        Tensor3 { domain, data: vec![Rational::zero(); n * n * n] }
    }

    pub fn at(&self, i: usize, j: usize, k: usize) -> &Rational {
        let n = self.domain.len();
        &self.data[(i * n + j) * n + k]
    }

    pub fn at_mut(&mut self, i: usize, j: usize, k: usize) -> &mut Rational {
        let n = self.domain.len();
        &mut self.data[(i * n + j) * n + k]
    }

    /// Full Krein tensor of a table, via the spectral sums.
    pub fn krein(t: &SpectralTable) -> Tensor3 {
        let n = t.idempotents.len();
        let mut out = Tensor3::zeros(t.idempotents.clone());
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    *out.at_mut(i, j, k) = krein_from_spectral(t, i, j, k);
                }
            }
        }
        out
    }

    /// Full intersection tensor of a table, via the dual spectral sums.
    pub fn intersection(t: &SpectralTable) -> Tensor3 {
        let n = t.relations.len();
        let mut out = Tensor3::zeros(t.relations.clone());
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    *out.at_mut(i, j, k) = intersection_from_spectral(t, i, j, k);
                }
            }
        }
        out
    }
}

/// A structure-constant entry that breaks a support or ordering claim.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StructureViolation {
    pub axis: usize,
    pub alpha: MultiIndex,
    pub beta: MultiIndex,
    pub value: Rational,
}

/// A raising coefficient that should be nonzero but is not.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MissingRaising {
    pub axis: usize,
    pub alpha: MultiIndex,
}

/// Outcome of the multivariate P- or Q-polynomial criterion.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyCheckReport {
    pub kind: String,
    pub order: String,
    pub downward_closed: bool,
    /// Whether every standard generator belongs to the domain. The support
    /// and raising conditions are checked over the generators present.
    pub all_generators_present: bool,
    pub support_violations: Vec<StructureViolation>,
    pub missing_raising: Vec<MissingRaising>,
    pub ok: bool,
}

fn check_polynomial_structure(
    kind: &str,
    domain: &Domain,
    order: MonomialOrder,
    tensor: &Tensor3,
) -> PolyCheckReport {
    assert_eq!(&tensor.domain, domain, "tensor indexed by a different domain");
    let downward_closed = domain.is_downward_closed();
    let mut support_violations = Vec::new();
    let mut missing_raising = Vec::new();
    let generators = domain.generator_positions();
    for (axis, gen_pos) in generators.iter().enumerate() {
        let Some(e_pos) = gen_pos else { continue };
        for (a_pos, alpha) in domain.members().iter().enumerate() {
            let bound = alpha.plus_unit(axis);
            for (b_pos, beta) in domain.members().iter().enumerate() {
                let value = tensor.at(*e_pos, a_pos, b_pos);
                if !value.is_zero() && order.compare(beta, &bound) == Ordering::Greater {
                    support_violations.push(StructureViolation {
                        axis,
                        alpha: alpha.clone(),
                        beta: beta.clone(),
                        value: value.clone(),
                    });
                }
            }
            if let Some(b_pos) = domain.position(&bound) {
                if tensor.at(*e_pos, a_pos, b_pos).is_zero() {
                    missing_raising.push(MissingRaising { axis, alpha: alpha.clone() });
                }
            }
        }
    }
    let ok = downward_closed && support_violations.is_empty() && missing_raising.is_empty();
    PolyCheckReport {
        kind: kind.to_string(),
        order: order.name().to_string(),
        downward_closed,
        all_generators_present: generators.iter().all(|g| g.is_some()),
        support_violations,
        missing_raising,
        ok,
    }
}

/// Multivariate Q-polynomial criterion over the idempotent domain: the
/// domain is downward closed, every nonzero q^beta_{eps,alpha} has
/// beta <= alpha + eps under the order, and the raising coefficient
/// q^{alpha+eps}_{eps,alpha} is nonzero whenever alpha + eps is in the
/// domain.
pub fn check_q_polynomial(
    t: &SpectralTable,
    order: MonomialOrder,
    krein: &Tensor3,
) -> PolyCheckReport {
    check_polynomial_structure("krein", &t.idempotents, order, krein)
}

/// Mirror of [`check_q_polynomial`] for intersection numbers over the
/// relation domain.
pub fn check_p_polynomial(
    t: &SpectralTable,
    order: MonomialOrder,
    inter: &Tensor3,
) -> PolyCheckReport {
    check_polynomial_structure("intersection", &t.relations, order, inter)
}

/// Krein/intersection sum rules, symmetry, nonnegativity of Krein numbers
/// and integrality of intersection numbers, as one sweep. Returns
/// human-readable violation descriptions; empty means all hold.
pub fn tensor_rule_violations(t: &SpectralTable, krein: &Tensor3, inter: &Tensor3) -> Vec<String> {
    let mut out = Vec::new();
    let n = t.idempotents.len();
    for i in 0..n {
        let mi = Rational::from_bigint(t.multiplicities[i].clone());
        for j in 0..n {
            let mut weighted = Rational::zero();
            for k in 0..n {
                let v = krein.at(i, j, k);
                if v.is_negative() {
                    out.push(format!(
                        "negative Krein number q^{}_{{{},{}}} = {v}",
                        t.idempotents.index(k),
                        t.idempotents.index(i),
                        t.idempotents.index(j)
                    ));
                }
                if v != krein.at(j, i, k) {
                    out.push(format!(
                        "Krein symmetry fails at ({i},{j},{k}): {v} vs {}",
                        krein.at(j, i, k)
                    ));
                }
                weighted += &(v * Rational::from_bigint(t.multiplicities[k].clone()));
            }
            let mj = Rational::from_bigint(t.multiplicities[j].clone());
            if weighted != &mi * &mj {
                out.push(format!("Krein weighted sum rule fails at ({i},{j})"));
            }
        }
        // sum over the middle subscript equals m_i for each superscript
        for k in 0..n {
            let mut row = Rational::zero();
            for j in 0..n {
                row += krein.at(i, j, k);
            }
            if row != mi {
                out.push(format!("Krein row sum rule fails at (i={i}, k={k})"));
            }
        }
    }
    let nr = t.relations.len();
    for i in 0..nr {
        let ki = Rational::from_bigint(t.valencies[i].clone());
        for j in 0..nr {
            let mut weighted = Rational::zero();
            for k in 0..nr {
                let v = inter.at(i, j, k);
                if v.is_negative() || !v.is_integer() {
                    out.push(format!(
                        "intersection number p^{}_{{{},{}}} = {v} not a nonnegative integer",
                        t.relations.index(k),
                        t.relations.index(i),
                        t.relations.index(j)
                    ));
                }
                if v != inter.at(j, i, k) {
                    out.push(format!("intersection symmetry fails at ({i},{j},{k})"));
                }
                weighted += &(v * Rational::from_bigint(t.valencies[k].clone()));
            }
            let kj = Rational::from_bigint(t.valencies[j].clone());
            if weighted != &ki * &kj {
                out.push(format!("intersection weighted sum rule fails at ({i},{j})"));
            }
        }
        for k in 0..nr {
            let mut row = Rational::zero();
            for j in 0..nr {
                row += inter.at(i, j, k);
            }
            if row != ki {
                out.push(format!("intersection row sum rule fails at (i={i}, k={k})"));
            }
        }
    }
    // orthogonality residuals of the second eigenmatrix
    for i in 0..n {
        for j in 0..n {
            let r = orthogonality_residual(t, i, j);
            if !r.is_zero() {
                out.push(format!("orthogonality residual nonzero at ({i},{j}): {r}"));
            }
        }
    }
    out
}

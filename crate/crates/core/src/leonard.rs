//! Verification of the simplex-domain multivariate P-and-Q property and of
//! the Leonard-pair axioms on the principal Terwilliger module.

use crate::exact::Rational;
use crate::matrix::{rational_rank, RatMatrix};
use crate::oracle::{build_idempotents, ConcreteScheme, OracleError};
use crate::scheme::{
    check_p_polynomial, check_q_polynomial, Domain, MonomialOrder, MultiIndex, SpectralTable,
    StructureViolation, Tensor3,
};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LeonardError {
    #[error("module fact {fact} fails at {witness}")]
    Fact { fact: &'static str, witness: String },
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// Degree bound N when the domain is exactly the simplex of all indices
/// with |alpha| <= N.
pub fn is_simplex(domain: &Domain) -> Option<u32> {
    let n = domain.members().iter().map(MultiIndex::degree).max()?;
    let dim = domain.dim();
    // distinct members all of degree <= N fill the simplex iff the count matches
    let expect = crate::exact::binomial(n as i64 + dim as i64, dim as i64);
    (num::BigInt::from(domain.len()) == expect).then_some(n)
}

/// Whether the difference of two indices is a permutation of the zero
/// tuple, (1,-1,0,...), (1,0,...), or (-1,0,...).
pub fn adjacent(a: &MultiIndex, b: &MultiIndex) -> bool {
    assert_eq!(a.dim(), b.dim(), "adjacency on mismatched dimensions");
    let mut nonzero: Vec<i64> = a
        .0
        .iter()
        .zip(&b.0)
        .map(|(x, y)| *x as i64 - *y as i64)
        .filter(|d| *d != 0)
        .collect();
    nonzero.sort_unstable();
    matches!(nonzero.as_slice(), [] | [1] | [-1] | [-1, 1])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AmVerdict {
    Holds,
    Fails,
    NotApplicable,
}

/// Outcome of the simplex-domain multivariate P-and-Q property check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AmReport {
    pub simplex_degree: Option<u32>,
    /// Orders under which the P-polynomial criterion holds.
    pub p_poly_orders: Vec<String>,
    /// Orders under which the Q-polynomial criterion holds.
    pub q_poly_orders: Vec<String>,
    pub p_adjacency_violations: Vec<StructureViolation>,
    pub q_adjacency_violations: Vec<StructureViolation>,
    pub verdict: AmVerdict,
}

fn adjacency_violations(domain: &Domain, tensor: &Tensor3) -> Vec<StructureViolation> {
    let mut out = Vec::new();
    for (axis, gen_pos) in domain.generator_positions().iter().enumerate() {
        let Some(e_pos) = *gen_pos else { continue };
        for (a_pos, alpha) in domain.members().iter().enumerate() {
            for (b_pos, beta) in domain.members().iter().enumerate() {
                let value = tensor.at(e_pos, a_pos, b_pos);
                if !value.is_zero() && !adjacent(beta, alpha) {
                    out.push(StructureViolation {
                        axis,
                        alpha: alpha.clone(),
                        beta: beta.clone(),
                        value: value.clone(),
                    });
                }
            }
        }
    }
    out
}

/// Check that the scheme is multivariate P-polynomial and Q-polynomial on a
/// simplex domain under some of the given orders, with every nonzero
/// generator structure constant supported on adjacent indices.
pub fn check_am_property(
    t: &SpectralTable,
    inter: &Tensor3,
    krein: &Tensor3,
    orders: &[MonomialOrder],
) -> AmReport {
    let simplex_degree = match (is_simplex(&t.relations), is_simplex(&t.idempotents)) {
        (Some(n), Some(n2)) if n == n2 => Some(n),
        _ => None,
    };
    if simplex_degree.is_none() {
        return AmReport {
            simplex_degree: None,
            p_poly_orders: Vec::new(),
            q_poly_orders: Vec::new(),
            p_adjacency_violations: Vec::new(),
            q_adjacency_violations: Vec::new(),
            verdict: AmVerdict::NotApplicable,
        };
    }
    let p_poly_orders: Vec<String> = orders
        .iter()
        .filter(|&&o| check_p_polynomial(t, o, inter).ok)
        .map(|o| o.name().to_string())
        .collect();
    let q_poly_orders: Vec<String> = orders
        .iter()
        .filter(|&&o| check_q_polynomial(t, o, krein).ok)
        .map(|o| o.name().to_string())
        .collect();
    let p_adjacency_violations = adjacency_violations(&t.relations, inter);
    let q_adjacency_violations = adjacency_violations(&t.idempotents, krein);
    let ok = !p_poly_orders.is_empty()
        && !q_poly_orders.is_empty()
        && p_adjacency_violations.is_empty()
        && q_adjacency_violations.is_empty();
    AmReport {
        simplex_degree,
        p_poly_orders,
        q_poly_orders,
        p_adjacency_violations,
        q_adjacency_violations,
        verdict: if ok { AmVerdict::Holds } else { AmVerdict::Fails },
    }
}

/// Principal Terwilliger module at a base point: the vectors
/// v*_alpha = E_alpha e_{x0} and v_alpha = E*_alpha 1, with the module
/// facts verified exactly at construction.
#[derive(Clone, Debug)]
pub struct PrincipalModule {
    pub x0: usize,
    pub domain: Domain,
    /// v*_alpha, indexed by idempotent position; spans the module.
    pub v_star: Vec<Vec<Rational>>,
    /// v_alpha = the indicator of the alpha-sphere around x0, as rationals.
    pub v: Vec<Vec<Rational>>,
}

fn apply_adjacency(s: &ConcreteScheme, class_pos: usize, vec: &[Rational]) -> Vec<Rational> {
    (0..s.size)
        .map(|x| {
            let mut acc = Rational::zero();
            for &z in s.neighbors(class_pos, x) {
                acc += &vec[z];
            }
            acc
        })
        .collect()
}

/// Build and verify the principal module, computing the idempotents from
/// the spectral table first. Facts checked: the eigenvector relations for
/// both families, one-dimensionality, and the structure-constant expansions
/// of A_j v_i and A*_j v*_i.
pub fn build_principal_module(
    s: &ConcreteScheme,
    t: &SpectralTable,
    x0: usize,
) -> Result<PrincipalModule, LeonardError> {
    let idempotents = build_idempotents(s, t)?;
    principal_module_from_parts(s, t, &idempotents, x0)
}

/// Same as [`build_principal_module`] given already-verified idempotents.
pub fn principal_module_from_parts(
    s: &ConcreteScheme,
    t: &SpectralTable,
    idempotents: &[RatMatrix],
    x0: usize,
) -> Result<PrincipalModule, LeonardError> {
    if x0 >= s.size {
        return Err(LeonardError::Invalid(format!("base point {x0} out of range")));
    }
    let n_classes = s.domain.len();
    let v_star: Vec<Vec<Rational>> = (0..n_classes)
        .map(|b| (0..s.size).map(|x| idempotents[b][(x, x0)].clone()).collect())
        .collect();
    let v: Vec<Vec<Rational>> = (0..n_classes)
        .map(|i| {
            (0..s.size)
                .map(|x| {
                    if s.relation_pos(x0, x) == i {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let scale =
        |vec: &[Rational], c: &Rational| -> Vec<Rational> { vec.iter().map(|v| v * c).collect() };
    // A_j v*_b = P_j(b) v*_b
    for j in 0..n_classes {
        for b in 0..n_classes {
            if apply_adjacency(s, j, &v_star[b]) != scale(&v_star[b], &t.p[j][b]) {
                return Err(LeonardError::Fact {
                    fact: "A_j v* = P_j v*",
                    witness: format!("j={}, b={}", s.domain.index(j), s.domain.index(b)),
                });
            }
        }
    }
    // A*_j v_i = Q_j(i) v_i, with A*_j the diagonal matrix of Q_j over spheres
    for j in 0..n_classes {
        for i in 0..n_classes {
            let applied: Vec<Rational> = (0..s.size)
                .map(|x| &t.q[j][s.relation_pos(x0, x)] * &v[i][x])
                .collect();
            if applied != scale(&v[i], &t.q[j][i]) {
                return Err(LeonardError::Fact {
                    fact: "A*_j v = Q_j v",
                    witness: format!("j={}, i={}", s.domain.index(j), s.domain.index(i)),
                });
            }
        }
    }
    // one-dimensionality: both families are nonzero
    for b in 0..n_classes {
        if v_star[b].iter().all(Rational::is_zero) {
            return Err(LeonardError::Fact {
                fact: "dim V_b = 1",
                witness: format!("v*_{} vanishes", s.domain.index(b)),
            });
        }
        if v[b].iter().all(Rational::is_zero) {
            return Err(LeonardError::Fact {
                fact: "dim V*_b = 1",
                witness: format!("v_{} vanishes", s.domain.index(b)),
            });
        }
    }
    let add_scaled = |acc: &mut Vec<Rational>, c: &Rational, vec: &[Rational]| {
        for (a, b) in acc.iter_mut().zip(vec) {
            *a += &(c * b);
        }
    };
    // A_j v_i = sum_k p^k_{ji} v_k against the triple-counted tensor
    for j in 0..n_classes {
        for i in 0..n_classes {
            let lhs = apply_adjacency(s, j, &v[i]);
            let mut rhs = vec![Rational::zero(); s.size];
            for k in 0..n_classes {
                add_scaled(&mut rhs, s.intersection.at(j, i, k), &v[k]);
            }
            if lhs != rhs {
                return Err(LeonardError::Fact {
                    fact: "A_j v_i = sum p^k_ji v_k",
                    witness: format!("j={}, i={}", s.domain.index(j), s.domain.index(i)),
                });
            }
        }
    }
    // A*_j v*_b = sum_k q^k_{jb} v*_k against the spectral Krein numbers
    for j in 0..n_classes {
        for b in 0..n_classes {
            let lhs: Vec<Rational> = (0..s.size)
                .map(|x| &t.q[j][s.relation_pos(x0, x)] * &v_star[b][x])
                .collect();
            let mut rhs = vec![Rational::zero(); s.size];
            for k in 0..n_classes {
                add_scaled(&mut rhs, &crate::scheme::krein_from_spectral(t, j, b, k), &v_star[k]);
            }
            if lhs != rhs {
                return Err(LeonardError::Fact {
                    fact: "A*_j v*_b = sum q^k_jb v*_k",
                    witness: format!("j={}, b={}", s.domain.index(j), s.domain.index(b)),
                });
            }
        }
    }
    Ok(PrincipalModule { x0, domain: s.domain.clone(), v_star, v })
}

/// Verdict for one Leonard-pair condition.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConditionReport {
    pub name: String,
    pub ok: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LeonardReport {
    pub conditions: Vec<ConditionReport>,
    pub ok: bool,
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Verify the seven Leonard-pair conditions on a principal module:
/// commuting diagonalizable spans of the full dimension on both sides,
/// adjacency of the generator supports in both bases, irreducibility by the
/// constructive generation argument, one-dimensional common eigenspaces,
/// and orthogonality of both eigenspace families under the standard
/// symmetric bilinear form.
pub fn verify_leonard_pair(
    pm: &PrincipalModule,
    krein: &Tensor3,
    inter: &Tensor3,
    t: &SpectralTable,
) -> LeonardReport {
    let dom = &pm.domain;
    let dim = dom.dim();
    let mut conditions = Vec::new();
    let mut push = |name: &str, ok: bool, witness: Option<String>| {
        conditions.push(ConditionReport { name: name.to_string(), ok, witness });
    };

    // (i)/(ii): the generator families act diagonally on the module (the
    // eigenvector facts verified at construction) and span spaces of the
    // full dimension, certified by the rank of their eigenvalue vectors.
    let gen_rows_p: Vec<Vec<Rational>> = dom
        .generator_positions()
        .iter()
        .flatten()
        .map(|&g| t.p[g].clone())
        .collect();
    let rank_p = rational_rank(&gen_rows_p);
    push(
        "commuting diagonalizable span (adjacency side)",
        gen_rows_p.len() == dim && rank_p == dim,
        (rank_p != dim).then(|| format!("eigenvalue rank {rank_p} < {dim}")),
    );
    let gen_rows_q: Vec<Vec<Rational>> = dom
        .generator_positions()
        .iter()
        .flatten()
        .map(|&g| t.q[g].clone())
        .collect();
    let rank_q = rational_rank(&gen_rows_q);
    push(
        "commuting diagonalizable span (dual side)",
        gen_rows_q.len() == dim && rank_q == dim,
        (rank_q != dim).then(|| format!("eigenvalue rank {rank_q} < {dim}")),
    );

    // (iii)/(iv): generator supports move only to adjacent indices
    let q_violations = adjacency_violations(dom, krein);
    push(
        "dual generators respect adjacency",
        q_violations.is_empty(),
        q_violations.first().map(|v| format!("q at {} -> {}", v.alpha, v.beta)),
    );
    let p_violations = adjacency_violations(dom, inter);
    push(
        "generators respect adjacency",
        p_violations.is_empty(),
        p_violations.first().map(|v| format!("p at {} -> {}", v.alpha, v.beta)),
    );

    // (v): irreducibility by generation: from any starting index, the
    // nonzero raising/lowering Krein coefficients reach the whole domain
    let mut unreached_witness = None;
    for start in 0..dom.len() {
        let mut seen = vec![false; dom.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(a_pos) = queue.pop_front() {
            let alpha = dom.index(a_pos).clone();
            for axis in 0..dim {
                let Some(e_pos) = dom.position(&MultiIndex::unit(dim, axis)) else { continue };
                let mut steps = vec![alpha.plus_unit(axis)];
                if let Some(down) = alpha.minus_unit(axis) {
                    steps.push(down);
                }
                for beta in steps {
                    if let Some(b_pos) = dom.position(&beta) {
                        if !seen[b_pos] && !krein.at(e_pos, a_pos, b_pos).is_zero() {
                            seen[b_pos] = true;
                            queue.push_back(b_pos);
                        }
                    }
                }
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            unreached_witness = Some(format!(
                "from {} the index {} is unreachable",
                dom.index(start),
                dom.index(missing)
            ));
            break;
        }
    }
    push("irreducibility by generation", unreached_witness.is_none(), unreached_witness);

    // (vi): one-dimensional eigenspaces
    let nonzero = pm.v_star.iter().all(|v| !v.iter().all(Rational::is_zero))
        && pm.v.iter().all(|v| !v.iter().all(Rational::is_zero));
    push("one-dimensional eigenspaces", nonzero, None);

    // (vii): both families orthogonal and nondegenerate under <u,v> = sum u v
    let mut gram_witness = None;
    for a in 0..dom.len() {
        for b in 0..dom.len() {
            let g = dot(&pm.v_star[a], &pm.v_star[b]);
            let h = dot(&pm.v[a], &pm.v[b]);
            if a == b {
                if g.is_zero() || h.is_zero() {
                    gram_witness = Some(format!("degenerate at {}", dom.index(a)));
                }
            } else if !g.is_zero() || !h.is_zero() {
                gram_witness =
                    Some(format!("not orthogonal at {}, {}", dom.index(a), dom.index(b)));
            }
        }
    }
    push("orthogonal eigenspace families", gram_witness.is_none(), gram_witness);

    let ok = conditions.iter().all(|c| c.ok);
    LeonardReport { conditions, ok }
}

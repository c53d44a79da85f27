//! Roan's decomposition for a cyclic action and its comparison with the
//! isotypical decomposition.
//!
//! Eigenvalue orders are read off the rational representation: `ρ_r` is
//! `ρ_a ⊕ conj(ρ_a)`, so both have the same set of eigenvalue orders, and the
//! multiplicity of `Φ_e` in the characteristic polynomial of `ρ_r` counts the
//! rational copies of the order-`e` block.

use crate::abgroup::{GroupElement, Subgroup};
use crate::action::{GAction, IsotypicalReport};
use crate::error::{Error, Result};
use crate::ntheory::{cyclotomic, divisors};
use crate::ratlinalg::{char_poly, image_space, kernel_space, MatQ, PolyQ, SubspaceQ};

fn check_order(m: &MatQ, d: u64) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if d == 0 || !m.pow(d)?.is_identity() {
        return Err(Error::RelationViolated {
            generator: 1,
            order: d,
        });
    }
    Ok(())
}

/// Factors `char_poly(M)` as `Π Φ_e^{k_e}` over `e | d` and returns the `e`
/// with `k_e > 0`, ascending.
pub fn eigenvalue_orders(m: &MatQ, d: u64) -> Result<Vec<(u64, usize)>> {
    check_order(m, d)?;
    let mut p = char_poly(m)?;
    let mut out = Vec::new();
    for e in divisors(d) {
        let phi = cyclotomic(e);
        let mut count = 0;
        loop {
            let (q, r) = p.div_rem(&phi)?;
            if !r.is_zero() {
                break;
            }
            p = q;
            count += 1;
        }
        if count > 0 {
            out.push((e, count));
        }
    }
    if p != PolyQ::one() {
        return Err(Error::NotCyclotomic(d));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoanReport {
    /// `(d_i, multiplicity of Φ_{d_i})`, `d_1 < ⋯ < d_s`.
    pub orders: Vec<(u64, usize)>,
    /// `Y_{d_0} = ℚ^m ⊇ Y_{d_1} ⊇ ⋯ ⊇ Y_{d_s} = 0`.
    pub filtration: Vec<SubspaceQ>,
    /// `(d_i, B_{d_i})`.
    pub components: Vec<(u64, SubspaceQ)>,
}

/// `Y_{d_i} = Im (I − M^{d_i})|Y_{d_{i−1}}` and
/// `B_{d_i} = ker (I − M^{d_i})|Y_{d_{i−1}}`, computed in the canonical basis
/// coordinates of `Y_{d_{i−1}}`.
pub fn roan_decomposition(m: &MatQ, d: u64) -> Result<RoanReport> {
    let orders = eigenvalue_orders(m, d)?;
    let dim = m.rows();
    if dim == 0 {
        return Err(Error::Shape("empty matrix".into()));
    }
    let id = MatQ::identity(dim);
    let mut y = SubspaceQ::full(dim);
    let mut filtration = vec![y.clone()];
    let mut components = Vec::new();
    for &(di, mult) in &orders {
        let t = &id - &m.pow(di)?;
        let restricted = y.restrict(&t)?;
        let b = y.lift(&kernel_space(&restricted))?;
        let next = y.lift(&image_space(&restricted))?;

        let on_b = char_poly(&b.restrict(m)?)?;
        let expected = (0..mult).fold(PolyQ::one(), |acc, _| acc.mul(&cyclotomic(di)));
        if b.dim() == 0 || on_b != expected {
            return Err(Error::Internal(format!(
                "B_{di} has characteristic polynomial {on_b}, expected Φ_{di}^{mult}"
            )));
        }
        components.push((di, b));
        filtration.push(next.clone());
        y = next;
    }
    if !y.is_zero() {
        return Err(Error::Internal(format!(
            "filtration ends in dimension {}, not 0",
            y.dim()
        )));
    }
    Ok(RoanReport {
        orders,
        filtration,
        components,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentMatch {
    pub order: u64,
    pub kernel: Subgroup,
    pub dim: usize,
}

/// The bijection between Roan components and nonzero isotypical components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremMatching {
    /// Generator `α` of `G` whose matrix was decomposed.
    pub generator: GroupElement,
    pub order: u64,
    pub roan: RoanReport,
    pub isotypical: IsotypicalReport,
    pub matches: Vec<ComponentMatch>,
    /// Kernels of the isotypical components matched by no `B_{d_i}`; all zero.
    pub zero_components: Vec<Subgroup>,
}

impl TheoremMatching {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "matches": self.matches.iter().map(|m| serde_json::json!({
                "order": m.order,
                "kernel_hnf": m.kernel.hnf().to_json(),
                "dim": m.dim,
            })).collect::<Vec<_>>(),
            "zero_components": self.zero_components.iter()
                .map(|k| k.hnf().to_json())
                .collect::<Vec<_>>(),
        })
    }
}

/// Computes both decompositions of a cyclic action and matches every
/// `B_{d_i}` to the unique isotypical component with the same subspace.
pub fn verify_theorem31(action: &GAction) -> Result<TheoremMatching> {
    let group = action.group();
    let invariants = group.invariants();
    if invariants.len() > 1 {
        return Err(Error::NonCyclicGroup(invariants));
    }
    let order = group.order();
    let generator = Subgroup::trivial(group)
        .quotient()
        .generator
        .expect("cyclic group has a generator");
    let alpha = action.rho(&generator);
    let roan = roan_decomposition(&alpha, order)?;
    let isotypical = action.isotypical_decomposition()?;

    let mut matched = vec![false; isotypical.components.len()];
    let mut matches = Vec::new();
    for (di, b) in &roan.components {
        let hits: Vec<usize> = isotypical
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| &c.subspace == b)
            .map(|(i, _)| i)
            .collect();
        let [i] = hits[..] else {
            return Err(Error::Internal(format!(
                "B_{di} matches {} isotypical components",
                hits.len()
            )));
        };
        if matched[i] {
            return Err(Error::Internal(format!(
                "B_{di} matched an already used component"
            )));
        }
        let c = &isotypical.components[i];
        if c.irrep.order != *di {
            return Err(Error::Internal(format!(
                "B_{di} matched a component of order {}",
                c.irrep.order
            )));
        }
        matched[i] = true;
        matches.push(ComponentMatch {
            order: *di,
            kernel: c.irrep.kernel.clone(),
            dim: b.dim(),
        });
    }
    let mut zero_components = Vec::new();
    for (c, used) in isotypical.components.iter().zip(&matched) {
        if *used {
            continue;
        }
        if c.dim() != 0 {
            return Err(Error::Internal(format!(
                "isotypical component for kernel {} has dim {} but no Roan counterpart",
                c.irrep.kernel,
                c.dim()
            )));
        }
        zero_components.push(c.irrep.kernel.clone());
    }
    Ok(TheoremMatching {
        generator,
        order,
        roan,
        isotypical,
        matches,
        zero_components,
    })
}

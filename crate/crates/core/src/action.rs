//! Rational representations of finite abelian groups, the stand-in for an
//! abelian variety with a group action up to isogeny.
//!
//! Abelian subvarieties correspond to rational subspaces. Connected components
//! of kernels and fixed loci are the full rational kernels: finite components
//! disappear up to isogeny.

use std::sync::OnceLock;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::abgroup::{FinAbGroup, GroupElement, Subgroup};
use crate::chars::{rational_irreps, RationalIrrep};
use crate::error::{Error, Result};
use crate::qalgebra::{central_idempotent, complementary_idempotent, p_subgroup, GroupAlgebraElem};
use crate::ratlinalg::{
    common_denominator, image_space, intersect_spaces, kernel_space, rat, sum_spaces, MatQ,
    Rational, SubspaceQ,
};

/// A validated action of `G` on `ℚ^m`: one matrix per modulus, satisfying
/// `M_j^{n_j} = I` and pairwise commuting.
#[derive(Debug)]
pub struct GAction {
    group: FinAbGroup,
    generators: Vec<MatQ>,
    dim: usize,
    kernel: Subgroup,
    warnings: Vec<String>,
    powers: Vec<OnceLock<Vec<MatQ>>>,
}

impl Clone for GAction {
    fn clone(&self) -> Self {
        GAction {
            group: self.group.clone(),
            generators: self.generators.clone(),
            dim: self.dim,
            kernel: self.kernel.clone(),
            warnings: self.warnings.clone(),
            powers: self.powers.clone(),
        }
    }
}

impl PartialEq for GAction {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.generators == other.generators
    }
}

/// Checks shapes, relations and commutativity, and computes the kernel of
/// the action. Non-faithful actions are accepted with a warning.
pub fn validate_action(group: &FinAbGroup, generators: Vec<MatQ>) -> Result<GAction> {
    if generators.len() != group.rank() {
        return Err(Error::Shape(format!(
            "{} generator matrices for {} moduli",
            generators.len(),
            group.rank()
        )));
    }
    let dim = generators[0].rows();
    if dim == 0 {
        return Err(Error::Shape(
            "representation dimension must be at least 1".into(),
        ));
    }
    for (j, m) in generators.iter().enumerate() {
        if !m.is_square() || m.rows() != dim {
            return Err(Error::Shape(format!(
                "generator {}: expected {dim}x{dim}, got {}x{}",
                j + 1,
                m.rows(),
                m.cols()
            )));
        }
    }
    for (j, (m, &n)) in generators.iter().zip(group.moduli()).enumerate() {
        if !m.pow(n)?.is_identity() {
            return Err(Error::RelationViolated {
                generator: j + 1,
                order: n,
            });
        }
    }
    for i in 0..generators.len() {
        for j in i + 1..generators.len() {
            if &generators[i] * &generators[j] != &generators[j] * &generators[i] {
                return Err(Error::NonCommuting(i + 1, j + 1));
            }
        }
    }
    let mut action = GAction {
        group: group.clone(),
        powers: (0..generators.len()).map(|_| OnceLock::new()).collect(),
        generators,
        dim,
        kernel: Subgroup::whole(group),
        warnings: Vec::new(),
    };
    action.kernel = action.compute_kernel();
    if !action.is_faithful() {
        let gens: Vec<String> = action
            .kernel
            .generators()
            .iter()
            .map(|g| g.to_string())
            .collect();
        action.warnings.push(format!(
            "action is not faithful: a subgroup of order {} (generated by {}) acts trivially",
            action.kernel.order(),
            gens.join(", ")
        ));
    }
    Ok(action)
}

impl GAction {
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn generators(&self) -> &[MatQ] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel.order() == 1
    }

    /// `{g : ρ(g) = I}`.
    pub fn action_kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    fn powers(&self, j: usize) -> &[MatQ] {
        self.powers[j].get_or_init(|| {
            let m = &self.generators[j];
            let mut out = Vec::with_capacity(self.group.moduli()[j] as usize);
            let mut cur = MatQ::identity(self.dim);
            for _ in 0..self.group.moduli()[j] {
                let next = &cur * m;
                out.push(cur);
                cur = next;
            }
            out
        })
    }

    /// `ρ(g) = Π_j M_j^{g_j}`.
    pub fn rho(&self, g: &GroupElement) -> MatQ {
        g.0.iter()
            .enumerate()
            .fold(MatQ::identity(self.dim), |acc, (j, &e)| {
                if e == 0 {
                    acc
                } else {
                    &acc * &self.powers(j)[e as usize]
                }
            })
    }

    fn compute_kernel(&self) -> Subgroup {
        // Propagate a probe vector through the group; only elements fixing
        // the probe are checked in full.
        let probe: Vec<Rational> = (1..=self.dim as i64).map(rat).collect();
        let order = self.group.order() as usize;
        let moduli = self.group.moduli();
        let k = moduli.len();
        let mut strides = vec![1usize; k];
        for j in (0..k.saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * moduli[j + 1] as usize;
        }
        let mut images: Vec<Vec<Rational>> = Vec::with_capacity(order);
        let mut trivial = Vec::new();
        for idx in 0..order {
            let g = self.group.element_at(idx);
            let img = match (0..k).rev().find(|&j| g.0[j] > 0) {
                None => probe.clone(),
                Some(j) => self.generators[j].mul_vec(&images[idx - strides[j]]),
            };
            if idx > 0 && img == probe && self.rho(&g).is_identity() {
                trivial.push(g);
            }
            images.push(img);
        }
        Subgroup::from_generators(&self.group, &trivial).expect("elements come from the group")
    }

    /// `ρ(x) = Σ_g x(g)·ρ(g)`.
    ///
    /// Evaluated coordinate by coordinate: the last generator contributes a
    /// linear combination of its powers, each earlier generator one matrix
    /// product per power, so most of the work is additions.
    pub fn rho_algebra(&self, x: &GroupAlgebraElem) -> Result<MatQ> {
        if x.group() != &self.group {
            return Err(Error::GroupMismatch(format!(
                "{} vs {}",
                x.group(),
                self.group
            )));
        }
        let denom = common_denominator(x.coeffs());
        let scale = Rational::from_integer(denom.clone());
        let ints: Vec<Rational> = x.coeffs().iter().map(|c| c * &scale).collect();
        let out = self.rho_level(0, &ints);
        Ok(out.scale(&Rational::new(BigInt::from(1), denom)))
    }

    fn rho_level(&self, j: usize, coeffs: &[Rational]) -> MatQ {
        let n = self.group.moduli()[j] as usize;
        let block = coeffs.len() / n;
        let powers = self.powers(j);
        let mut acc = MatQ::zeros(self.dim, self.dim);
        for t in 0..n {
            let sub = &coeffs[t * block..(t + 1) * block];
            if sub.iter().all(num_traits::Zero::is_zero) {
                continue;
            }
            if j + 1 == self.group.rank() {
                acc.add_scaled(&sub[0], &powers[t]);
            } else {
                let inner = self.rho_level(j + 1, sub);
                if t == 0 {
                    acc.add_scaled(&rat(1), &inner);
                } else {
                    acc.add_scaled(&rat(1), &(&powers[t] * &inner));
                }
            }
        }
        acc
    }

    fn check_subgroup(&self, h: &Subgroup) -> Result<()> {
        if h.group() != &self.group {
            return Err(Error::GroupMismatch(format!(
                "{} vs {}",
                h.group(),
                self.group
            )));
        }
        Ok(())
    }

    /// `A^H = Im ρ(p_H)`.
    pub fn fixed_subvariety(&self, h: &Subgroup) -> Result<SubspaceQ> {
        self.check_subgroup(h)?;
        Ok(image_space(&self.rho_algebra(&p_subgroup(h))?))
    }

    /// `⋂_{h} ker(ρ(h) − I)` over a generating set of `H`.
    pub fn common_fixed_space(&self, h: &Subgroup) -> Result<SubspaceQ> {
        self.check_subgroup(h)?;
        let id = MatQ::identity(self.dim);
        h.generators()
            .iter()
            .try_fold(SubspaceQ::full(self.dim), |acc, g| {
                intersect_spaces(&acc, &kernel_space(&(&self.rho(g) - &id)))
            })
    }

    /// `P(A^K/A^H) = Im ρ(p_K − p_H)` for `K ⊆ H`.
    pub fn complementary_subvariety(&self, k: &Subgroup, h: &Subgroup) -> Result<SubspaceQ> {
        self.check_subgroup(k)?;
        self.check_subgroup(h)?;
        Ok(image_space(
            &self.rho_algebra(&complementary_idempotent(k, h)?)?,
        ))
    }

    /// `Im ρ(e_W)`.
    pub fn idempotent_component(&self, w: &RationalIrrep) -> Result<SubspaceQ> {
        self.check_subgroup(&w.kernel)?;
        Ok(image_space(&self.rho_algebra(&central_idempotent(w))?))
    }

    /// `A_W` via the intersection formula, with the per-overgroup terms.
    pub fn intersection_component(
        &self,
        w: &RationalIrrep,
    ) -> Result<(SubspaceQ, Vec<OvergroupTerm>)> {
        let k = &w.kernel;
        self.check_subgroup(k)?;
        if k.is_whole() {
            return Ok((self.fixed_subvariety(k)?, Vec::new()));
        }
        let mut acc = SubspaceQ::full(self.dim);
        let mut terms = Vec::new();
        for h in k.minimal_overgroups()? {
            let p = self.complementary_subvariety(k, &h)?;
            acc = intersect_spaces(&acc, &p)?;
            terms.push(OvergroupTerm {
                relative_index: k.index() / h.index(),
                index: h.index(),
                complement_dim: p.dim(),
                subgroup: h,
            });
        }
        Ok((acc, terms))
    }

    /// `A_W`, computed by both routes; they must agree.
    pub fn isotypical_component(&self, w: &RationalIrrep) -> Result<SubspaceQ> {
        Ok(self.component_record(w)?.subspace)
    }

    pub fn component_record(&self, w: &RationalIrrep) -> Result<IsotypicalComponent> {
        let (by_intersection, overgroups) = self.intersection_component(w)?;
        let e = central_idempotent(w);
        let rho_e = self.rho_algebra(&e)?;
        let by_idempotent = image_space(&rho_e);
        if by_intersection != by_idempotent {
            return Err(Error::Internal(format!(
                "component for kernel {}: intersection route has dim {}, idempotent route dim {}",
                w.kernel,
                by_intersection.dim(),
                by_idempotent.dim()
            )));
        }
        let dim = by_idempotent.dim();
        if !(dim as u64).is_multiple_of(w.degree) {
            return Err(Error::Internal(format!(
                "component for kernel {} has dim {dim}, not a multiple of {}",
                w.kernel, w.degree
            )));
        }
        Ok(IsotypicalComponent {
            irrep: w.clone(),
            multiplicity: dim as u64 / w.degree,
            clearing_denominator: common_denominator(rho_e.entries()),
            subspace: by_idempotent,
            overgroups,
        })
    }

    /// Isotypical decomposition: one record per irreducible rational
    /// representation, zero components included.
    pub fn isotypical_decomposition(&self) -> Result<IsotypicalReport> {
        let irreps = rational_irreps(&self.group);
        let components = irreps
            .par_iter()
            .map(|w| self.component_record(w))
            .collect::<Result<Vec<_>>>()?;
        let mut warnings = self.warnings.clone();
        if self.dim % 2 == 1 {
            warnings.push(format!(
                "odd rational dimension {}: not the rational homology of an abelian variety",
                self.dim
            ));
        }
        let report = IsotypicalReport {
            group: self.group.clone(),
            dim: self.dim,
            faithful: self.is_faithful(),
            action_kernel: self.kernel.clone(),
            components,
            warnings,
        };
        report.check_isogeny()?;
        Ok(report)
    }
}

/// One factor `P(A^K/A^H)` of the intersection formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OvergroupTerm {
    pub subgroup: Subgroup,
    /// `[G : H]`
    pub index: u64,
    /// `[H : K]`, a prime.
    pub relative_index: u64,
    pub complement_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicalComponent {
    pub irrep: RationalIrrep,
    pub subspace: SubspaceQ,
    pub multiplicity: u64,
    /// `𝒫_K` with the dimension of each `P(A^K/A^H)`; empty when `K = G`.
    pub overgroups: Vec<OvergroupTerm>,
    /// Smallest positive integer `n` with `n·ρ(e_W)` integral.
    pub clearing_denominator: BigInt,
}

impl IsotypicalComponent {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicalReport {
    pub group: FinAbGroup,
    pub dim: usize,
    pub faithful: bool,
    pub action_kernel: Subgroup,
    pub components: Vec<IsotypicalComponent>,
    pub warnings: Vec<String>,
}

impl IsotypicalReport {
    /// The components are independent and span `ℚ^m`: iterated sums grow by
    /// exactly the dimension of each new summand and end at the full space.
    pub fn check_isogeny(&self) -> Result<()> {
        let mut acc = SubspaceQ::zero(self.dim);
        for c in &self.components {
            let next = sum_spaces(&acc, &c.subspace)?;
            if next.dim() != acc.dim() + c.dim() {
                return Err(Error::Internal(format!(
                    "component for kernel {} meets the sum of the previous ones",
                    c.irrep.kernel
                )));
            }
            acc = next;
        }
        if acc.dim() != self.dim {
            return Err(Error::Internal(format!(
                "components span dimension {} of {}",
                acc.dim(),
                self.dim
            )));
        }
        Ok(())
    }

    pub fn component_for_kernel(&self, k: &Subgroup) -> Option<&IsotypicalComponent> {
        self.components.iter().find(|c| &c.irrep.kernel == k)
    }

    /// Abelian-variety plausibility beyond the even-dimension check done by
    /// the decomposition: components whose characters are real (order 1 or
    /// 2) must have even multiplicity since `ρ_r ≅ ρ_a ⊕ conj(ρ_a)`.
    pub fn plausibility_warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        for c in &self.components {
            if c.irrep.order <= 2 && c.multiplicity % 2 == 1 {
                out.push(format!(
                    "component of order {} (kernel {}) has odd multiplicity {}",
                    c.irrep.order, c.irrep.kernel, c.multiplicity
                ));
            }
        }
        out
    }
}

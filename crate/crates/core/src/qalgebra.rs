//! The rational group algebra `ℚ[G]` of a finite abelian group, with the
//! subgroup averages `p_H` and the central idempotents `e_W`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::abgroup::{FinAbGroup, GroupElement, Subgroup};
use crate::chars::{ramanujan_sum, RationalIrrep};
use crate::error::{Error, Result};
use crate::ratlinalg::{common_denominator, format_rational, parse_rational, rat, Rational};

/// Dense element of `ℚ[G]`: one coefficient per group element, in the order
/// of [`FinAbGroup::elements`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupAlgebraElem {
    group: FinAbGroup,
    coeffs: Vec<Rational>,
}

impl GroupAlgebraElem {
    pub fn zero(group: &FinAbGroup) -> Self {
        GroupAlgebraElem {
            group: group.clone(),
            coeffs: vec![Rational::zero(); group.order() as usize],
        }
    }

    /// The basis element `g`.
    pub fn basis(group: &FinAbGroup, g: &GroupElement) -> Self {
        let mut x = Self::zero(group);
        x.coeffs[group.index_of(g)] = Rational::one();
        x
    }

    /// Multiplicative identity (the group identity with coefficient 1).
    pub fn one(group: &FinAbGroup) -> Self {
        Self::basis(group, &group.identity())
    }

    pub fn from_coeffs(group: &FinAbGroup, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != group.order() as usize {
            return Err(Error::Shape(format!(
                "{} coefficients for a group of order {}",
                coeffs.len(),
                group.order()
            )));
        }
        Ok(GroupAlgebraElem {
            group: group.clone(),
            coeffs,
        })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, g: &GroupElement) -> &Rational {
        &self.coeffs[self.group.index_of(g)]
    }

    /// Nonzero terms in element order.
    pub fn terms(&self) -> impl Iterator<Item = (GroupElement, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.group.element_at(i), c))
    }

    fn check_group(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(format!(
                "{} vs {}",
                self.group, other.group
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        Ok(GroupAlgebraElem {
            group: self.group.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        Ok(GroupAlgebraElem {
            group: self.group.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        GroupAlgebraElem {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Convolution `(xy)(g) = Σ_h x(h)·y(g − h)`.
    ///
    /// Runs on integer numerators over a common denominator; the loop is the
    /// naive quadratic one over nonzero terms.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let group = &self.group;
        let integral = |x: &Self| -> (BigInt, Vec<(GroupElement, BigInt)>) {
            let d = common_denominator(&x.coeffs);
            let terms = x
                .terms()
                .map(|(g, c)| (g, (c * Rational::from_integer(d.clone())).to_integer()))
                .collect();
            (d, terms)
        };
        let (dx, xs) = integral(self);
        let (dy, ys) = integral(other);
        let mut acc = vec![BigInt::zero(); group.order() as usize];
        for (g, a) in &xs {
            for (h, b) in &ys {
                acc[group.index_of(&group.add(g, h))] += a * b;
            }
        }
        let denom = dx * dy;
        Ok(GroupAlgebraElem {
            group: group.clone(),
            coeffs: acc
                .into_iter()
                .map(|n| Rational::new(n, denom.clone()))
                .collect(),
        })
    }

    pub fn is_idempotent(&self) -> bool {
        self.multiply(self).map(|sq| &sq == self).unwrap_or(false)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `{"group": [...], "coeffs": [["p/q", [exps]], ...]}` listing nonzero terms.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms()
            .map(|(g, c)| serde_json::json!([format_rational(c), g.0]))
            .collect();
        serde_json::json!({ "group": self.group.moduli(), "coeffs": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let group: FinAbGroup = serde_json::from_value(v["group"].clone())
            .map_err(|e| Error::Parse(format!("algebra element group: {e}")))?;
        let terms: Vec<(String, Vec<u64>)> = serde_json::from_value(v["coeffs"].clone())
            .map_err(|e| Error::Parse(format!("algebra element coeffs: {e}")))?;
        let mut x = Self::zero(&group);
        for (c, exps) in terms {
            let g = GroupElement(exps);
            group.check_element(&g)?;
            let idx = group.index_of(&g);
            x.coeffs[idx] += parse_rational(&c)?;
        }
        Ok(x)
    }
}

impl fmt::Display for GroupAlgebraElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .map(|(g, c)| format!("{}·{}", format_rational(c), g))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `p_H = (1/|H|) Σ_{h∈H} h`.
pub fn p_subgroup(h: &Subgroup) -> GroupAlgebraElem {
    let group = h.group();
    let c = Rational::new(BigInt::one(), BigInt::from(h.order()));
    let mut x = GroupAlgebraElem::zero(group);
    for e in h.elements() {
        x.coeffs[group.index_of(&e)] = c.clone();
    }
    x
}

/// `e_W = (1/|G|) Σ_g c_n(m(g))·g` where `χ(g) = ζ_n^{m(g)}` for a character
/// in the Galois class of `W` and `c_n` is the Ramanujan sum.
pub fn central_idempotent(w: &RationalIrrep) -> GroupAlgebraElem {
    let group = w.group();
    let order = rat(group.order() as i64);
    let coeffs = group
        .elements()
        .map(|g| {
            let m = w.representative.value_in_order(&g);
            rat(ramanujan_sum(w.order, m as i64)) / &order
        })
        .collect();
    GroupAlgebraElem {
        group: group.clone(),
        coeffs,
    }
}

/// `p_K − p_H` for `K ⊆ H`.
pub fn complementary_idempotent(k: &Subgroup, h: &Subgroup) -> Result<GroupAlgebraElem> {
    if !h.contains_subgroup(k) {
        return Err(Error::NotContained(format!("K = {k}"), format!("H = {h}")));
    }
    p_subgroup(k).sub(&p_subgroup(h))
}

/// `Π_{H ∈ 𝒫_K} (p_K − p_H)`, with the empty product (`K = G`) taken to be
/// `p_G`.
pub fn product_formula_idempotent(k: &Subgroup) -> Result<GroupAlgebraElem> {
    let overgroups = k.minimal_overgroups()?;
    let pk = p_subgroup(k);
    if overgroups.is_empty() {
        return Ok(pk);
    }
    let mut acc = GroupAlgebraElem::one(k.group());
    for h in &overgroups {
        acc = acc.multiply(&pk.sub(&p_subgroup(h))?)?;
    }
    Ok(acc)
}

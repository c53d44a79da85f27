//! Finite abelian groups `ℤ/n_1 × ⋯ × ℤ/n_k`, their elements, and subgroups
//! stored canonically as Hermite normal forms of their preimage lattices in
//! `ℤ^k`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ntheory;
use crate::ratlinalg::{hnf, smith, MatQ, MatZ, Rational};

/// `ℤ/n_1 × ⋯ × ℤ/n_k` given by its moduli (not necessarily in divisibility
/// order).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FinAbGroup {
    moduli: Vec<u64>,
}

impl TryFrom<Vec<u64>> for FinAbGroup {
    type Error = Error;
    fn try_from(moduli: Vec<u64>) -> Result<Self> {
        FinAbGroup::new(moduli)
    }
}

impl From<FinAbGroup> for Vec<u64> {
    fn from(g: FinAbGroup) -> Self {
        g.moduli
    }
}

/// Exponent vector of a group element, each entry reduced into `[0, n_j)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct GroupElement(pub Vec<u64>);

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl FinAbGroup {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidGroup(
                "at least one modulus is required".into(),
            ));
        }
        if moduli.contains(&0) {
            return Err(Error::InvalidGroup("moduli must be positive".into()));
        }
        moduli
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::InvalidGroup("group order overflows u64".into()))?;
        Ok(FinAbGroup { moduli })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    /// Least common multiple of the moduli.
    pub fn exponent(&self) -> u64 {
        self.moduli.iter().fold(1, |acc, &n| ntheory::lcm(acc, n))
    }

    /// Invariant factors `d_1 | ⋯ | d_k` of the group, with the 1's dropped
    /// (the trivial group yields `[1]`).
    pub fn invariants(&self) -> Vec<u64> {
        let inv = Subgroup::trivial(self).quotient().invariants;
        let nontrivial: Vec<u64> = inv.into_iter().filter(|&d| d > 1).collect();
        if nontrivial.is_empty() {
            vec![1]
        } else {
            nontrivial
        }
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariants().len() == 1
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    /// Reduces an arbitrary integer exponent vector into the group.
    pub fn element(&self, exps: &[i64]) -> Result<GroupElement> {
        if exps.len() != self.rank() {
            return Err(Error::NotAnElement(format!("{exps:?}")));
        }
        Ok(GroupElement(
            exps.iter()
                .zip(&self.moduli)
                .map(|(&e, &n)| e.rem_euclid(n as i64) as u64)
                .collect(),
        ))
    }

    fn element_from_big(&self, exps: &[BigInt]) -> GroupElement {
        GroupElement(
            exps.iter()
                .zip(&self.moduli)
                .map(|(e, &n)| e.mod_floor(&BigInt::from(n)).to_u64().unwrap())
                .collect(),
        )
    }

    pub fn check_element(&self, g: &GroupElement) -> Result<()> {
        if g.0.len() != self.rank() || g.0.iter().zip(&self.moduli).any(|(e, n)| e >= n) {
            return Err(Error::NotAnElement(g.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.moduli)
                .map(|((x, y), n)| (x + y) % n)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.moduli)
                .map(|(x, n)| (n - x) % n)
                .collect(),
        )
    }

    pub fn scale(&self, a: &GroupElement, t: u64) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.moduli)
                .map(|(x, n)| ((*x as u128 * t as u128) % *n as u128) as u64)
                .collect(),
        )
    }

    pub fn element_order(&self, a: &GroupElement) -> u64 {
        a.0.iter()
            .zip(&self.moduli)
            .fold(1, |acc, (&x, &n)| ntheory::lcm(acc, n / ntheory::gcd(x, n)))
    }

    /// Position of `a` in [`FinAbGroup::elements`] (mixed radix, last
    /// coordinate fastest).
    pub fn index_of(&self, a: &GroupElement) -> usize {
        a.0.iter()
            .zip(&self.moduli)
            .fold(0usize, |acc, (&x, &n)| acc * n as usize + x as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut exps = vec![0; self.rank()];
        for j in (0..self.rank()).rev() {
            let n = self.moduli[j] as usize;
            exps[j] = (idx % n) as u64;
            idx /= n;
        }
        GroupElement(exps)
    }

    /// All elements in lexicographic order of exponent vectors.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order() as usize).map(move |i| self.element_at(i))
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|n| format!("Z/{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// A subgroup `H ⊆ G`, identified by the HNF of its preimage lattice
/// `L ⊆ ℤ^k` (which always contains the relation lattice `⊕ n_j·ℤ`).
///
/// Equality of subgroups is equality of the HNF matrices. The ordering used
/// throughout is by index first, then lexicographically by HNF entries.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subgroup {
    group: FinAbGroup,
    hnf: MatZ,
}

/// Structure of `G/H`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quotient {
    pub index: u64,
    /// Invariant factors of the Smith form of the HNF, `d_1 | ⋯ | d_k`.
    pub invariants: Vec<u64>,
    pub cyclic: bool,
    /// When `G/H` is cyclic, an element whose coset generates it.
    pub generator: Option<GroupElement>,
}

impl Subgroup {
    fn from_lattice_rows(group: &FinAbGroup, mut rows: Vec<Vec<BigInt>>) -> Subgroup {
        let k = group.rank();
        for (j, &n) in group.moduli.iter().enumerate() {
            let mut r = vec![BigInt::zero(); k];
            r[j] = BigInt::from(n);
            rows.push(r);
        }
        let m = MatZ::from_rows(rows, k).expect("rows have group rank");
        let hnf = hnf(&m).expect("relation rows make the lattice full rank");
        Subgroup {
            group: group.clone(),
            hnf,
        }
    }

    pub fn from_generators(group: &FinAbGroup, gens: &[GroupElement]) -> Result<Subgroup> {
        for g in gens {
            group.check_element(g)?;
        }
        let rows = gens
            .iter()
            .map(|g| g.0.iter().map(|&e| BigInt::from(e)).collect())
            .collect();
        Ok(Self::from_lattice_rows(group, rows))
    }

    /// Builds a subgroup directly from an HNF, checking that it is one.
    pub fn from_hnf(group: &FinAbGroup, m: MatZ) -> Result<Subgroup> {
        let k = group.rank();
        if m.rows() != k || m.cols() != k {
            return Err(Error::Shape(format!("subgroup HNF must be {k}x{k}")));
        }
        let s = Self::from_lattice_rows(group, m.row_vecs());
        if s.hnf != m {
            return Err(Error::InvalidParameter(format!(
                "{m} is not the canonical HNF of a subgroup of {group}"
            )));
        }
        Ok(s)
    }

    pub fn trivial(group: &FinAbGroup) -> Subgroup {
        Self::from_lattice_rows(group, Vec::new())
    }

    pub fn whole(group: &FinAbGroup) -> Subgroup {
        Subgroup {
            group: group.clone(),
            hnf: MatZ::identity(group.rank()),
        }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn hnf(&self) -> &MatZ {
        &self.hnf
    }

    /// `[G : H]`, the determinant of the (triangular) HNF.
    pub fn index(&self) -> u64 {
        (0..self.group.rank())
            .map(|i| self.hnf.get(i, i).to_u64().unwrap())
            .product()
    }

    pub fn order(&self) -> u64 {
        self.group.order() / self.index()
    }

    pub fn is_whole(&self) -> bool {
        self.index() == 1
    }

    /// Membership by back-substitution against the triangular basis.
    pub fn contains(&self, g: &GroupElement) -> bool {
        let mut r: Vec<BigInt> = g.0.iter().map(|&e| BigInt::from(e)).collect();
        self.contains_vector(&mut r)
    }

    fn contains_vector(&self, r: &mut [BigInt]) -> bool {
        let k = self.group.rank();
        for j in 0..k {
            let (q, rem) = r[j].div_mod_floor(self.hnf.get(j, j));
            if !rem.is_zero() {
                return false;
            }
            if q.is_zero() {
                continue;
            }
            for (x, b) in r[j..].iter_mut().zip(&self.hnf.row(j)[j..]) {
                *x -= &q * b;
            }
        }
        true
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        self.group == other.group
            && (0..self.group.rank()).all(|i| self.contains_vector(&mut other.hnf.row(i).to_vec()))
    }

    /// Members of the subgroup, in the group's element order.
    pub fn elements(&self) -> Vec<GroupElement> {
        self.group.elements().filter(|g| self.contains(g)).collect()
    }

    /// A generating set: the HNF rows reduced into the group (zero rows dropped).
    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.group.rank())
            .map(|i| self.group.element_from_big(self.hnf.row(i)))
            .filter(|g| g.0.iter().any(|&e| e != 0))
            .collect()
    }

    /// The subgroup generated by `self` and the extra elements.
    pub fn join(&self, extra: &[GroupElement]) -> Result<Subgroup> {
        for g in extra {
            self.group.check_element(g)?;
        }
        let mut rows = self.hnf.row_vecs();
        rows.extend(
            extra
                .iter()
                .map(|g| g.0.iter().map(|&e| BigInt::from(e)).collect()),
        );
        Ok(Self::from_lattice_rows(&self.group, rows))
    }

    /// Index, invariant factors and (if cyclic) a generating coset of `G/H`.
    pub fn quotient(&self) -> Quotient {
        let s = smith(&self.hnf).expect("subgroup HNF is nonsingular");
        let invariants: Vec<u64> = s.invariants.iter().map(|d| d.to_u64().unwrap()).collect();
        let index = invariants.iter().product();
        let cyclic = invariants.iter().filter(|&&d| d > 1).count() <= 1;
        let generator = cyclic.then(|| {
            let k = self.group.rank();
            self.group.element_from_big(s.col_transform_inv.row(k - 1))
        });
        Quotient {
            index,
            invariants,
            cyclic,
            generator,
        }
    }

    /// Invariant factors of `H` itself as an abstract group (trivial factors
    /// dropped, `[1]` for the trivial subgroup). The relation lattice written
    /// in the HNF basis is `diag(n)·HNF⁻¹`, an integer matrix.
    pub fn invariants(&self) -> Vec<u64> {
        let k = self.group.rank();
        let hnf_q = MatQ::from_rows(
            self.hnf
                .row_vecs()
                .into_iter()
                .map(|r| r.into_iter().map(Rational::from_integer).collect())
                .collect(),
        )
        .expect("square HNF");
        let inv = hnf_q.inverse().expect("subgroup HNF is nonsingular");
        let rows = (0..k)
            .map(|i| {
                let n = BigInt::from(self.group.moduli()[i]);
                inv.row(i)
                    .iter()
                    .map(|x| {
                        let v = x * Rational::from_integer(n.clone());
                        debug_assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();
        let rel = MatZ::from_rows(rows, k).expect("square relation matrix");
        let d: Vec<u64> = smith(&rel)
            .expect("relation matrix is nonsingular")
            .invariants
            .iter()
            .map(|x| x.to_u64().unwrap())
            .filter(|&x| x > 1)
            .collect();
        if d.is_empty() {
            vec![1]
        } else {
            d
        }
    }

    /// `𝒫_K`: the subgroups `H ⊇ K` with `[H : K]` prime, one per prime
    /// divisor of `[G : K]`, listed by ascending prime. Requires `G/K` cyclic.
    pub fn minimal_overgroups(&self) -> Result<Vec<Subgroup>> {
        let q = self.quotient();
        if !q.cyclic {
            return Err(Error::NonCyclicQuotient(q.invariants));
        }
        let x = q.generator.expect("cyclic quotient has a generator");
        ntheory::distinct_primes(q.index)
            .into_iter()
            .map(|p| self.join(&[self.group.scale(&x, q.index / p)]))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.group.moduli,
            "hnf": self.hnf.to_json(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Subgroup> {
        let group: FinAbGroup = serde_json::from_value(v["group"].clone())
            .map_err(|e| Error::Parse(format!("subgroup group: {e}")))?;
        let rows: Vec<Vec<i64>> = serde_json::from_value(v["hnf"].clone())
            .map_err(|e| Error::Parse(format!("subgroup hnf: {e}")))?;
        let k = group.rank();
        let m = MatZ::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
            k,
        )?;
        Subgroup::from_hnf(&group, m)
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.group
            .cmp(&other.group)
            .then(self.index().cmp(&other.index()))
            .then_with(|| self.hnf.row_vecs().cmp(&other.hnf.row_vecs()))
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.hnf)
    }
}

/// `(index, invariants)` of `G/H`.
pub fn index_and_quotient(h: &Subgroup) -> (u64, Vec<u64>) {
    let q = h.quotient();
    (q.index, q.invariants)
}

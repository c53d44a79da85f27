//! Complex characters of a finite abelian group in exact exponent form, their
//! kernels, and the irreducible rational representations indexed by kernels
//! with cyclic quotient.
//!
//! A character `χ_a` is never evaluated numerically. Its value at `g` is
//! `ζ_N^{val(a, g)}` with `N = lcm(n_j)` and `val(a, g) = Σ_j (N/n_j)·a_j·g_j
//! mod N`; everything downstream needs only these exponents.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::abgroup::{FinAbGroup, GroupElement, Subgroup};
use crate::error::{Error, Result};
use crate::ntheory::{self, cyclotomic};
use crate::ratlinalg::{hnf, MatQ, MatZ};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Character {
    group: FinAbGroup,
    exps: GroupElement,
}

impl Character {
    pub fn new(group: &FinAbGroup, exps: GroupElement) -> Result<Self> {
        group.check_element(&exps)?;
        Ok(Character {
            group: group.clone(),
            exps,
        })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn exps(&self) -> &GroupElement {
        &self.exps
    }

    fn weights(&self) -> Vec<u64> {
        let n = self.group.exponent();
        self.exps
            .0
            .iter()
            .zip(self.group.moduli())
            .map(|(&a, &nj)| (n / nj) * a % n)
            .collect()
    }

    /// `val(a, g)`, the exponent of `ζ_N` in `χ_a(g)`.
    pub fn value_exponent(&self, g: &GroupElement) -> u64 {
        let n = self.group.exponent() as u128;
        self.weights()
            .iter()
            .zip(&g.0)
            .fold(0u128, |acc, (&w, &x)| (acc + w as u128 * x as u128) % n) as u64
    }

    /// Order of `χ_a` in the dual group, equal to `[G : ker χ_a]`.
    pub fn order(&self) -> u64 {
        self.group.element_order(&self.exps)
    }

    /// Exponent `m` with `χ_a(g) = ζ_n^m`, where `n` is the character's order.
    pub fn value_in_order(&self, g: &GroupElement) -> u64 {
        self.value_exponent(g) / (self.group.exponent() / self.order())
    }

    /// `χ^t`, i.e. the character with exponents `t·a`.
    pub fn power(&self, t: u64) -> Character {
        Character {
            group: self.group.clone(),
            exps: self.group.scale(&self.exps, t),
        }
    }

    /// The Galois orbit `{t·a : gcd(t, order) = 1}`, sorted.
    pub fn galois_class(&self) -> Vec<GroupElement> {
        let n = self.order();
        let mut out: Vec<GroupElement> = (1..=n)
            .filter(|&t| ntheory::gcd(t, n) == 1)
            .map(|t| self.power(t).exps)
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// `ker χ_a = {g : Σ_j w_j·g_j ≡ 0 mod N}` as a canonical subgroup.
///
/// The congruence lattice is read off the HNF of the rows `[w_j | e_j]` and
/// `[N | 0]`: rows of the HNF with a zero first coordinate span exactly the
/// solutions.
pub fn char_kernel(chi: &Character) -> Subgroup {
    let group = &chi.group;
    let k = group.rank();
    let n = group.exponent();
    let mut rows: Vec<Vec<BigInt>> = chi
        .weights()
        .iter()
        .enumerate()
        .map(|(j, &w)| {
            let mut r = vec![BigInt::zero(); k + 1];
            r[0] = BigInt::from(w);
            r[j + 1] = BigInt::from(1);
            r
        })
        .collect();
    let mut last = vec![BigInt::zero(); k + 1];
    last[0] = BigInt::from(n);
    rows.push(last);
    let h = hnf(&MatZ::from_rows(rows, k + 1).unwrap()).expect("lattice is full rank");
    let kernel_rows: Vec<Vec<BigInt>> = (1..=k).map(|i| h.row(i)[1..].to_vec()).collect();
    let m = hnf(&MatZ::from_rows(kernel_rows, k).unwrap()).expect("kernel lattice is full rank");
    Subgroup::from_hnf(group, m).expect("kernel lattice contains the relations")
}

/// An irreducible rational representation, keyed by its kernel.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalIrrep {
    pub kernel: Subgroup,
    /// `[G : K]`, the common order of the characters in the Galois class.
    pub order: u64,
    /// `φ(order)`.
    pub degree: u64,
    /// Lexicographically smallest character with this kernel.
    pub representative: Character,
}

impl RationalIrrep {
    /// The irrep Galois-associated to `chi`.
    pub fn of_character(chi: &Character) -> RationalIrrep {
        let kernel = char_kernel(chi);
        let rep = chi
            .galois_class()
            .into_iter()
            .next()
            .expect("galois class contains chi");
        let order = chi.order();
        RationalIrrep {
            kernel,
            order,
            degree: ntheory::totient(order),
            representative: Character::new(&chi.group, rep).unwrap(),
        }
    }

    pub fn group(&self) -> &FinAbGroup {
        self.kernel.group()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

/// All irreducible rational representations of `G`, one per kernel, ordered
/// by index then HNF.
pub fn rational_irreps(group: &FinAbGroup) -> Vec<RationalIrrep> {
    let mut by_kernel: BTreeMap<Subgroup, Character> = BTreeMap::new();
    for a in group.elements() {
        let chi = Character::new(group, a).unwrap();
        by_kernel.entry(char_kernel(&chi)).or_insert(chi);
    }
    by_kernel
        .into_iter()
        .map(|(kernel, representative)| {
            let order = kernel.index();
            RationalIrrep {
                kernel,
                order,
                degree: ntheory::totient(order),
                representative,
            }
        })
        .collect()
}

/// The irrep whose kernel is `k`. Fails unless `G/K` is cyclic.
pub fn irrep_for_kernel(k: &Subgroup) -> Result<RationalIrrep> {
    let q = k.quotient();
    if !q.cyclic {
        return Err(Error::NonCyclicQuotient(q.invariants));
    }
    let group = k.group();
    group
        .elements()
        .map(|a| Character::new(group, a).unwrap())
        .find(|chi| chi.order() == q.index && &char_kernel(chi) == k)
        .map(|chi| RationalIrrep::of_character(&chi))
        .ok_or_else(|| Error::Internal(format!("no character with kernel {k}")))
}

/// Ramanujan sum `c_n(k) = Σ_{gcd(t,n)=1} ζ_n^{t·k} = μ(n/d)·φ(n)/φ(n/d)`,
/// `d = gcd(k, n)`.
pub fn ramanujan_sum(n: u64, k: i64) -> i64 {
    assert!(n >= 1, "ramanujan_sum needs n ≥ 1");
    let d = (k.unsigned_abs() % n).gcd(&n);
    let m = n / d;
    ntheory::mobius(m) * (ntheory::totient(n) / ntheory::totient(m)) as i64
}

/// One `φ(n)×φ(n)` matrix per group generator: `g_j ↦ C^{m_j}` with `C` the
/// companion matrix of `Φ_n` and `χ(g_j) = ζ_n^{m_j}` for the representative.
pub fn irrep_model(w: &RationalIrrep) -> Vec<MatQ> {
    let group = w.group();
    let c = cyclotomic(w.order)
        .companion()
        .expect("cyclotomic polynomials are monic of positive degree");
    (0..group.rank())
        .map(|j| {
            let mut e = vec![0; group.rank()];
            e[j] = 1;
            let m = w.representative.value_in_order(&GroupElement(e));
            c.pow(m).unwrap()
        })
        .collect()
}

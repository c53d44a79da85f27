//! Deterministic generators of test actions.
//!
//! All randomness comes from a seeded ChaCha stream, so a fixture spec always
//! produces the same action file.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abgroup::{FinAbGroup, GroupElement, Subgroup};
use crate::chars::{irrep_model, rational_irreps, Character, RationalIrrep};
use crate::error::{Error, Result};
use crate::io::{ActionFile, GroundTruth};
use crate::ntheory::is_prime;
use crate::ratlinalg::{rat, MatQ};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixtureSpec {
    /// Translation action of `ℤ/n` on `ℚ^n`.
    Regular { n: u64 },
    /// `G = ℤ/p³ × ℤ/q²` acting by `W^mult ⊕ W_1 ⊕ W_2 ⊕ 1`, where `W` is the
    /// class of `χ_(p², q)`, `W_1` that of `χ_(0, q)` and `W_2` that of
    /// `χ_(p², 0)`.
    PaperExample { p: u64, q: u64, multiplicity: u64 },
    /// `⊕ irrep_model(W_χ)^m` over `(χ, m)`; characters with the same kernel
    /// contribute to the same component.
    Semisimple {
        group: Vec<u64>,
        components: Vec<(GroupElement, u64)>,
    },
    /// A semisimple action conjugated by a seeded random unimodular matrix.
    RandomConjugated {
        group: Vec<u64>,
        components: Vec<(GroupElement, u64)>,
        seed: u64,
    },
}

/// Characters used by the paper-example fixture, in the order
/// `(χ_(p²,q), χ_(0,q), χ_(p²,0), trivial)`.
pub fn paper_example_characters(p: u64, q: u64) -> [GroupElement; 4] {
    [
        GroupElement(vec![p * p, q]),
        GroupElement(vec![0, q]),
        GroupElement(vec![p * p, 0]),
        GroupElement(vec![0, 0]),
    ]
}

pub fn make_fixture(spec: &FixtureSpec) -> Result<ActionFile> {
    match spec {
        FixtureSpec::Regular { n } => regular(*n),
        FixtureSpec::PaperExample { p, q, multiplicity } => {
            for (name, v) in [("p", p), ("q", q)] {
                if !is_prime(*v) {
                    return Err(Error::InvalidParameter(format!(
                        "{name} = {v} is not prime"
                    )));
                }
            }
            if *multiplicity == 0 {
                return Err(Error::InvalidParameter(
                    "multiplicity must be positive".into(),
                ));
            }
            let [w, w1, w2, triv] = paper_example_characters(*p, *q);
            let mut f = semisimple(
                &[p.pow(3), q.pow(2)],
                &[(w, *multiplicity), (w1, 1), (w2, 1), (triv, 1)],
            )?;
            f.name = Some(format!("paper-example p={p} q={q} mult={multiplicity}"));
            Ok(f)
        }
        FixtureSpec::Semisimple { group, components } => semisimple(group, components),
        FixtureSpec::RandomConjugated {
            group,
            components,
            seed,
        } => {
            let base = semisimple(group, components)?;
            let dim = base.generators[0].rows();
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let (u, u_inv) = random_unimodular(dim, &mut rng);
            let generators = base.generators.iter().map(|m| &(&u * m) * &u_inv).collect();
            Ok(ActionFile {
                name: Some(format!("random-conjugated seed={seed}")),
                generators,
                ..base
            })
        }
    }
}

fn regular(n: u64) -> Result<ActionFile> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let group = FinAbGroup::cyclic(n)?;
    let size = n as usize;
    let mut m = MatQ::zeros(size, size);
    for i in 0..size {
        m.set((i + 1) % size, i, rat(1));
    }
    let ground_truth = rational_irreps(&group)
        .into_iter()
        .map(|w| GroundTruth {
            kernel: w.kernel,
            multiplicity: 1,
        })
        .collect();
    Ok(ActionFile {
        name: Some(format!("regular n={n}")),
        group,
        generators: vec![m],
        ground_truth: Some(ground_truth),
    })
}

fn semisimple(moduli: &[u64], components: &[(GroupElement, u64)]) -> Result<ActionFile> {
    let group = FinAbGroup::new(moduli.to_vec())?;
    if components.iter().all(|(_, m)| *m == 0) {
        return Err(Error::InvalidParameter(
            "at least one component needs positive multiplicity".into(),
        ));
    }
    let mut by_kernel: BTreeMap<Subgroup, (RationalIrrep, u64)> = BTreeMap::new();
    for (a, mult) in components {
        let chi = Character::new(&group, a.clone()).map_err(|_| {
            Error::InvalidParameter(format!("character {a} is not in the dual of {group}"))
        })?;
        let w = RationalIrrep::of_character(&chi);
        by_kernel.entry(w.kernel.clone()).or_insert((w, 0)).1 += mult;
    }
    let mut generators: Vec<Option<MatQ>> = vec![None; group.rank()];
    let mut ground_truth = Vec::new();
    for (kernel, (w, mult)) in by_kernel {
        if mult == 0 {
            continue;
        }
        let model = irrep_model(&w);
        for _ in 0..mult {
            for (g, block) in generators.iter_mut().zip(&model) {
                *g = Some(match g.take() {
                    None => block.clone(),
                    Some(acc) => acc.direct_sum(block),
                });
            }
        }
        ground_truth.push(GroundTruth {
            kernel,
            multiplicity: mult,
        });
    }
    Ok(ActionFile {
        name: Some("semisimple".into()),
        group,
        generators: generators.into_iter().map(Option::unwrap).collect(),
        ground_truth: Some(ground_truth),
    })
}

/// A product of `3·dim` random transvections `I ± e_i e_jᵀ` and its inverse.
pub fn random_unimodular(dim: usize, rng: &mut impl Rng) -> (MatQ, MatQ) {
    let mut u = MatQ::identity(dim);
    let mut u_inv = MatQ::identity(dim);
    if dim < 2 {
        return (u, u_inv);
    }
    for _ in 0..3 * dim {
        let i = rng.random_range(0..dim);
        let mut j = rng.random_range(0..dim - 1);
        if j >= i {
            j += 1;
        }
        let c = if rng.random_bool(0.5) {
            rat(1)
        } else {
            rat(-1)
        };
        // u ← E·u : row_i += c·row_j
        for col in 0..dim {
            let v = u.get(i, col) + &c * u.get(j, col);
            u.set(i, col, v);
        }
        // u_inv ← u_inv·E⁻¹ : col_j −= c·col_i
        for row in 0..dim {
            let v = u_inv.get(row, j) - &c * u_inv.get(row, i);
            u_inv.set(row, j, v);
        }
    }
    (u, u_inv)
}

/// A random list of `(character, multiplicity)` whose total dimension is at
/// most `max_dim` (and at least 1).
pub fn random_components(
    group: &FinAbGroup,
    max_dim: u64,
    rng: &mut impl Rng,
) -> Vec<(GroupElement, u64)> {
    let irreps: Vec<RationalIrrep> = rational_irreps(group)
        .into_iter()
        .filter(|w| w.degree <= max_dim)
        .collect();
    let target = rng.random_range(1..=max_dim);
    let mut used = 0;
    let mut out = Vec::new();
    for _ in 0..4 * irreps.len() {
        let w = &irreps[rng.random_range(0..irreps.len())];
        let mult = rng.random_range(1..=2u64);
        if used + w.degree * mult <= target {
            used += w.degree * mult;
            out.push((w.representative.exps().clone(), mult));
        }
        if used == target {
            break;
        }
    }
    if out.is_empty() {
        out.push((group.identity(), 1));
    }
    out
}

/// `RandomConjugated` spec with random components, all derived from `seed`.
pub fn random_conjugated_spec(moduli: &[u64], max_dim: u64, seed: u64) -> Result<FixtureSpec> {
    let group = FinAbGroup::new(moduli.to_vec())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_f1c7);
    Ok(FixtureSpec::RandomConjugated {
        group: moduli.to_vec(),
        components: random_components(&group, max_dim, &mut rng),
        seed,
    })
}

use std::collections::{BTreeSet, HashSet};

use isotypic::chars::{char_kernel, irrep_for_kernel, irrep_model, ramanujan_sum, rational_irreps};
use isotypic::ntheory::{distinct_primes, divisors, gcd, is_prime};
use isotypic::{validate_action, Character, FinAbGroup, GroupElement, RationalIrrep, Subgroup};
use proptest::prelude::*;

fn group_strategy() -> impl Strategy<Value = FinAbGroup> {
    prop::collection::vec(1u64..=12, 1..=3)
        .prop_filter("order at most 200", |m| m.iter().product::<u64>() <= 200)
        .prop_map(|m| FinAbGroup::new(m).unwrap())
}

fn with_elements(count: usize) -> impl Strategy<Value = (FinAbGroup, Vec<GroupElement>)> {
    group_strategy().prop_flat_map(move |g| {
        let n = g.order() as usize;
        let g2 = g.clone();
        (
            Just(g),
            prop::collection::vec(0..n, 0..=count)
                .prop_map(move |ix| ix.into_iter().map(|i| g2.element_at(i)).collect()),
        )
    })
}

/// Closure of `gens` under addition, by breadth-first search.
fn span(g: &FinAbGroup, gens: &[GroupElement]) -> HashSet<GroupElement> {
    let mut seen: HashSet<GroupElement> = HashSet::from([g.identity()]);
    let mut frontier = vec![g.identity()];
    while let Some(x) = frontier.pop() {
        for s in gens {
            let y = g.add(&x, s);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

/// All `H ⊇ K` with `[H : K]` prime. Such `H/K` is cyclic of prime order, so
/// `H = K + ⟨g⟩` for any `g ∈ H \ K`.
fn brute_prime_overgroups(k: &Subgroup) -> BTreeSet<Subgroup> {
    let g = k.group();
    g.elements()
        .filter(|x| !k.contains(x))
        .filter_map(|x| {
            let h = k.join(std::slice::from_ref(&x)).unwrap();
            is_prime(h.order() / k.order()).then_some(h)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn subgroup_matches_brute_force_span((g, gens) in with_elements(3)) {
        let h = Subgroup::from_generators(&g, &gens).unwrap();
        let brute = span(&g, &gens);
        prop_assert_eq!(h.order() as usize, brute.len());
        prop_assert_eq!(h.index() * h.order(), g.order());
        for x in g.elements() {
            prop_assert_eq!(h.contains(&x), brute.contains(&x));
        }
        let listed: HashSet<_> = h.elements().into_iter().collect();
        prop_assert_eq!(listed, brute);
        prop_assert_eq!(h.invariants().iter().product::<u64>(), h.order());
    }

    #[test]
    fn subgroup_ignores_generator_order((g, gens) in with_elements(4)) {
        let h = Subgroup::from_generators(&g, &gens).unwrap();
        let mut rev = gens.clone();
        rev.reverse();
        prop_assert_eq!(&Subgroup::from_generators(&g, &rev).unwrap(), &h);
        // Redundant generators change nothing.
        let mut more = gens.clone();
        if gens.len() >= 2 {
            more.push(g.add(&gens[0], &gens[1]));
        }
        more.push(g.identity());
        prop_assert_eq!(&Subgroup::from_generators(&g, &more).unwrap(), &h);
        prop_assert_eq!(&Subgroup::from_generators(&g, &h.generators()).unwrap(), &h);
    }

    #[test]
    fn quotient_structure((g, gens) in with_elements(2)) {
        let h = Subgroup::from_generators(&g, &gens).unwrap();
        let q = h.quotient();
        prop_assert_eq!(q.index, h.index());
        prop_assert_eq!(q.invariants.iter().product::<u64>(), q.index);
        if let Some(x) = q.generator {
            // The coset of x has order [G:H] in G/H.
            let mut y = g.identity();
            for t in 1..=q.index {
                y = g.add(&y, &x);
                prop_assert_eq!(h.contains(&y), t == q.index);
            }
        }
    }

    #[test]
    fn minimal_overgroups_match_brute_force((g, gens) in with_elements(2), pick in any::<prop::sample::Index>()) {
        let k = Subgroup::from_generators(&g, &gens).unwrap();
        let q = k.quotient();
        prop_assume!(q.cyclic);
        let p_k = k.minimal_overgroups().unwrap();
        prop_assert_eq!(p_k.len(), distinct_primes(k.index()).len());
        let listed: BTreeSet<_> = p_k.iter().cloned().collect();
        prop_assert_eq!(listed, brute_prime_overgroups(&k));
        // Replacing the generator x by x + k' gives the same overgroups.
        let x = q.generator.unwrap();
        let kel = k.elements();
        let shifted = g.add(&x, &kel[pick.index(kel.len())]);
        for (h, p) in p_k.iter().zip(distinct_primes(k.index())) {
            prop_assert!(h.contains_subgroup(&k));
            prop_assert_eq!(h.order(), k.order() * p);
            let alt = k.join(&[g.scale(&shifted, k.index() / p)]).unwrap();
            prop_assert_eq!(&alt, h);
        }
    }

    #[test]
    fn galois_class_is_same_kernel_set(g in group_strategy(), pick in any::<prop::sample::Index>()) {
        let a = g.element_at(pick.index(g.order() as usize));
        let chi = Character::new(&g, a).unwrap();
        let ker = char_kernel(&chi);
        let same_kernel: BTreeSet<GroupElement> = g
            .elements()
            .filter(|b| char_kernel(&Character::new(&g, b.clone()).unwrap()) == ker)
            .collect();
        let class: BTreeSet<GroupElement> = chi.galois_class().into_iter().collect();
        prop_assert_eq!(class, same_kernel);
        // Kernel as a set: exactly the g with χ(g) = 1.
        for x in g.elements() {
            prop_assert_eq!(ker.contains(&x), chi.value_exponent(&x) == 0);
        }
        prop_assert_eq!(ker.index(), chi.order());
    }

    #[test]
    fn irreps_partition_characters(g in group_strategy()) {
        let irreps = rational_irreps(&g);
        prop_assert_eq!(irreps.iter().map(|w| w.degree).sum::<u64>(), g.order());
        let kernels: BTreeSet<_> = irreps.iter().map(|w| w.kernel.clone()).collect();
        prop_assert_eq!(kernels.len(), irreps.len());
        for w in &irreps {
            prop_assert!(w.kernel.quotient().cyclic);
            prop_assert_eq!(&irrep_for_kernel(&w.kernel).unwrap().kernel, &w.kernel);
            for b in w.representative.galois_class() {
                let other = RationalIrrep::of_character(&Character::new(&g, b).unwrap());
                prop_assert_eq!(&other.kernel, &w.kernel);
                prop_assert_eq!(other.degree, w.degree);
            }
        }
        if g.is_cyclic() {
            prop_assert_eq!(irreps.len(), divisors(g.order()).len());
        }
    }
}

#[test]
fn ramanujan_sum_matches_cosine_sum() {
    for n in 1..=40u64 {
        for k in -3..=(n as i64 + 3) {
            let direct: f64 = (1..=n)
                .filter(|&t| gcd(t, n) == 1)
                .map(|t| (2.0 * std::f64::consts::PI * (t as f64) * (k as f64) / n as f64).cos())
                .sum();
            assert_eq!(ramanujan_sum(n, k), direct.round() as i64, "c_{n}({k})");
            assert!((direct - direct.round()).abs() < 1e-9);
        }
    }
}

#[test]
fn irrep_models_realize_their_kernels() {
    for moduli in [vec![12], vec![8, 4], vec![2, 2, 3], vec![3, 9], vec![5]] {
        let g = FinAbGroup::new(moduli).unwrap();
        for w in rational_irreps(&g) {
            let mats = irrep_model(&w);
            assert_eq!(mats.len(), g.rank());
            for m in &mats {
                assert_eq!(m.rows() as u64, w.degree);
            }
            let action = validate_action(&g, mats).unwrap();
            assert_eq!(
                action.action_kernel(),
                &w.kernel,
                "group {g}, order {}",
                w.order
            );
        }
    }
}

#[test]
fn case_b_kernel_is_not_cyclic_but_quotient_is() {
    let g = FinAbGroup::new(vec![8, 4]).unwrap();
    let chi = Character::new(&g, GroupElement(vec![4, 2])).unwrap();
    let k = char_kernel(&chi);
    let expected = Subgroup::from_generators(
        &g,
        &[g.element(&[1, -1]).unwrap(), g.element(&[0, 2]).unwrap()],
    )
    .unwrap();
    assert_eq!(k, expected);
    assert_eq!(k.index(), 2);
    assert!(k.quotient().cyclic);
    assert_eq!(k.invariants(), vec![2, 8]);
    assert_eq!(k.minimal_overgroups().unwrap(), vec![Subgroup::whole(&g)]);
}

#[test]
fn non_cyclic_quotient_has_no_irrep() {
    let g = FinAbGroup::new(vec![2, 2]).unwrap();
    let k = Subgroup::trivial(&g);
    assert!(irrep_for_kernel(&k).is_err());
    assert!(k.minimal_overgroups().is_err());
}

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Golden files for the determinism criterion live in `tests/golden/`; set
//! `UPDATE_GOLDEN=1` to rewrite them.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use isotypic::chars::{char_kernel, ramanujan_sum, rational_irreps};
use isotypic::fixture::{make_fixture, random_conjugated_spec};
use isotypic::io::ActionFile;
use isotypic::ntheory::{cyclotomic, divisors, gcd, totient};
use isotypic::qalgebra::{central_idempotent, p_subgroup, product_formula_idempotent};
use isotypic::ratlinalg::{intersect_spaces, rat, sum_spaces};
use isotypic::{
    verify_theorem31, Character, FinAbGroup, GroupAlgebraElem, GroupElement, MatQ, PolyQ, Subgroup,
    SubspaceQ,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("idempotent identities", idempotent_identities),
        ("product formula equals central idempotent", product_formula),
        ("intersection route on conjugated actions", variety_level),
        ("Roan components match isotypical components", roan_matching),
        ("paper example through the CLI", paper_example),
        (
            "Ramanujan sums against cyclotomic arithmetic",
            ramanujan_oracle,
        ),
        ("regular representation law", regular_law),
        ("deterministic output (golden files)", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure!(took < limit, "{what} took {took:?}, limit {limit:?}");
    Ok(())
}

/// Every abelian group of order at most 100 in invariant-factor form
/// `d_1 | d_2 | ⋯ | d_k` (the trivial group as `[1]`), followed by a few
/// presentations that are not in that form.
fn group_list() -> Vec<Vec<u64>> {
    fn extend(prefix: &mut Vec<u64>, order: u64, out: &mut Vec<Vec<u64>>) {
        let last = prefix.last().copied().unwrap_or(1);
        let mut d = if prefix.is_empty() { 2 } else { last };
        while order * d <= 100 {
            if d % last == 0 {
                prefix.push(d);
                out.push(prefix.clone());
                extend(prefix, order * d, out);
                prefix.pop();
            }
            d += if prefix.is_empty() { 1 } else { last };
        }
    }
    let mut out = vec![vec![1]];
    extend(&mut Vec::new(), 1, &mut out);
    out.extend([
        vec![2, 3],
        vec![4, 6],
        vec![2, 2, 3],
        vec![8, 9],
        vec![6, 10],
        vec![3, 4, 5],
    ]);
    out
}

fn groups() -> Vec<FinAbGroup> {
    group_list()
        .into_iter()
        .map(|m| FinAbGroup::new(m).unwrap())
        .collect()
}

fn idempotent_identities() -> Outcome {
    let start = Instant::now();
    let groups = groups();
    let mut products = 0usize;
    for g in &groups {
        let es: Vec<GroupAlgebraElem> = rational_irreps(g).iter().map(central_idempotent).collect();
        let mut total = GroupAlgebraElem::zero(g);
        for (i, a) in es.iter().enumerate() {
            total = total.add(a).unwrap();
            ensure!(a.multiply(a).unwrap() == *a, "{g}: e_W² ≠ e_W");
            for b in &es[i + 1..] {
                ensure!(a.multiply(b).unwrap().is_zero(), "{g}: e_W·e_W' ≠ 0");
                products += 1;
            }
        }
        ensure!(total == GroupAlgebraElem::one(g), "{g}: Σ e_W ≠ 1");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x1de7);
    let candidates: Vec<&FinAbGroup> = groups.iter().filter(|g| g.order() > 1).collect();
    let mut pairs = 0;
    while pairs < 200 {
        let g = candidates[rng.random_range(0..candidates.len())];
        let pick = |rng: &mut ChaCha8Rng| g.element_at(rng.random_range(0..g.order() as usize));
        let h_gens: Vec<GroupElement> = (0..rng.random_range(0..=2))
            .map(|_| pick(&mut rng))
            .collect();
        let h = Subgroup::from_generators(g, &h_gens).unwrap();
        let n = h.join(&[pick(&mut rng)]).unwrap();
        if n == h {
            continue;
        }
        ensure!(n.contains_subgroup(&h), "{g}: join does not contain {h}");
        let (ph, pn) = (p_subgroup(&h), p_subgroup(&n));
        ensure!(
            pn.multiply(&ph).unwrap() == pn,
            "{g}: p_N·p_H ≠ p_N for H = {h}, N = {n}"
        );
        pairs += 1;
    }
    within(start, Duration::from_secs(60), "criterion 1")?;
    Ok(format!(
        "{} groups, {products} cross products, {pairs} H ⊂ N pairs",
        groups.len()
    ))
}

fn product_formula() -> Outcome {
    let mut kernels = 0;
    for g in groups() {
        for w in rational_irreps(&g) {
            let lhs = product_formula_idempotent(&w.kernel).map_err(|e| e.to_string())?;
            ensure!(
                lhs == central_idempotent(&w),
                "{g}: mismatch for kernel {}",
                w.kernel
            );
            kernels += 1;
        }
    }
    Ok(format!("{kernels} kernels"))
}

fn pairwise_independent(spaces: &[&SubspaceQ]) -> Result<(), String> {
    for (i, a) in spaces.iter().enumerate() {
        for b in &spaces[i + 1..] {
            let meet = intersect_spaces(a, b).map_err(|e| e.to_string())?;
            ensure!(
                meet.is_zero(),
                "components meet in dimension {}",
                meet.dim()
            );
        }
    }
    Ok(())
}

fn spans_everything(dim: usize, spaces: &[&SubspaceQ]) -> Result<(), String> {
    let total: usize = spaces.iter().map(|s| s.dim()).sum();
    ensure!(total == dim, "dimensions sum to {total}, not {dim}");
    let mut acc = SubspaceQ::zero(dim);
    for s in spaces {
        acc = sum_spaces(&acc, s).map_err(|e| e.to_string())?;
    }
    ensure!(acc.dim() == dim, "components span dimension {}", acc.dim());
    Ok(())
}

fn variety_level() -> Outcome {
    let start = Instant::now();
    let groups: [&[u64]; 5] = [&[8, 9], &[4, 4], &[2, 2, 3], &[12], &[8, 4]];
    let mut components = 0;
    for seed in 0..100u64 {
        let moduli = groups[seed as usize % groups.len()];
        let spec = random_conjugated_spec(moduli, 24, seed).unwrap();
        let file = make_fixture(&spec).unwrap();
        let action = file.to_action().unwrap();
        let truth = file.ground_truth.clone().unwrap();
        for w in rational_irreps(action.group()) {
            let via_idempotent = action.idempotent_component(&w).map_err(|e| e.to_string())?;
            let (via_overgroups, _) = action
                .intersection_component(&w)
                .map_err(|e| e.to_string())?;
            ensure!(
                via_idempotent == via_overgroups,
                "seed {seed}: routes differ for kernel {}",
                w.kernel
            );
            let expected = truth
                .iter()
                .find(|t| t.kernel == w.kernel)
                .map_or(0, |t| t.multiplicity);
            ensure!(
                via_idempotent.dim() as u64 == expected * w.degree,
                "seed {seed}: kernel {} has dim {}, expected multiplicity {expected}",
                w.kernel,
                via_idempotent.dim()
            );
            components += 1;
        }
        let report = action
            .isotypical_decomposition()
            .map_err(|e| e.to_string())?;
        for c in &report.components {
            let expected = truth
                .iter()
                .find(|t| t.kernel == c.irrep.kernel)
                .map_or(0, |t| t.multiplicity);
            ensure!(
                c.multiplicity == expected,
                "seed {seed}: multiplicity mismatch"
            );
        }
    }
    within(start, Duration::from_secs(120), "criterion 3")?;
    Ok(format!("100 actions, {components} components"))
}

fn roan_matching() -> Outcome {
    let mut matched = 0;
    let mut zero = 0;
    for seed in 0..100u64 {
        let d = 2 + seed % 23;
        let spec = random_conjugated_spec(&[d], 16, 1000 + seed).unwrap();
        let action = make_fixture(&spec).unwrap().to_action().unwrap();
        let t = verify_theorem31(&action).map_err(|e| format!("seed {seed}: {e}"))?;
        let iso = &t.isotypical;

        let nonzero: Vec<_> = iso.components.iter().filter(|c| c.dim() > 0).collect();
        ensure!(
            t.matches.len() == nonzero.len() && t.matches.len() == t.roan.components.len(),
            "seed {seed}: {} matches, {} nonzero components, {} Roan components",
            t.matches.len(),
            nonzero.len(),
            t.roan.components.len()
        );
        let kernels: BTreeSet<_> = t.matches.iter().map(|m| m.kernel.clone()).collect();
        ensure!(
            kernels.len() == t.matches.len(),
            "seed {seed}: kernel matched twice"
        );
        for m in &t.matches {
            let (_, b) = t
                .roan
                .components
                .iter()
                .find(|(o, _)| *o == m.order)
                .ok_or(format!("seed {seed}: no B_{}", m.order))?;
            let a = iso.component_for_kernel(&m.kernel).unwrap();
            ensure!(&a.subspace == b, "seed {seed}: B_{} ≠ A_W", m.order);
        }
        for k in &t.zero_components {
            ensure!(
                iso.component_for_kernel(k).unwrap().dim() == 0,
                "seed {seed}: unmatched component is nonzero"
            );
        }
        let roan: Vec<&SubspaceQ> = t.roan.components.iter().map(|(_, b)| b).collect();
        let isotypical: Vec<&SubspaceQ> = iso.components.iter().map(|c| &c.subspace).collect();
        for side in [&roan, &isotypical] {
            spans_everything(action.dim(), side).map_err(|e| format!("seed {seed}: {e}"))?;
            pairwise_independent(side).map_err(|e| format!("seed {seed}: {e}"))?;
        }
        iso.check_isogeny().map_err(|e| e.to_string())?;
        matched += t.matches.len();
        zero += t.zero_components.len();
    }
    Ok(format!(
        "100 actions, {matched} matched pairs, {zero} zero components"
    ))
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_isotypic"))
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str], dir: &Path) -> Run {
    let out = bin()
        .args(args)
        .current_dir(dir)
        .output()
        .expect("run isotypic");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

fn run_ok(args: &[&str], dir: &Path) -> Result<String, String> {
    let r = run(args, dir);
    ensure!(
        r.code == 0,
        "isotypic {} exited {}: {}",
        args.join(" "),
        r.code,
        r.stderr
    );
    Ok(r.stdout)
}

fn basis_from_json(dim: usize, v: &Value) -> Result<SubspaceQ, String> {
    let m = MatQ::from_json(v).map_err(|e| e.to_string())?;
    if m.rows() == 0 {
        return Ok(SubspaceQ::zero(dim));
    }
    SubspaceQ::from_spanning_rows(dim, &m).map_err(|e| e.to_string())
}

fn component_for<'a>(report: &'a Value, k: &Subgroup) -> Result<&'a Value, String> {
    report["components"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["kernel_hnf"] == k.hnf().to_json())
        .ok_or(format!("no component with kernel {k}"))
}

fn paper_example() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path();

    // Case (a): G = Z/8 x Z/9, K = ker χ_(4,3).
    for mult in [1u64, 2] {
        let m = mult.to_string();
        run_ok(
            &[
                "fixture",
                "paper-example",
                "2",
                "3",
                "--mult",
                &m,
                "-o",
                "a.json",
            ],
            path,
        )?;
        let report: Value =
            serde_json::from_str(&run_ok(&["decompose", "--json", "a.json"], path)?).unwrap();
        let file = ActionFile::parse(&std::fs::read_to_string(path.join("a.json")).unwrap())
            .map_err(|e| e.to_string())?;
        let action = file.to_action().map_err(|e| e.to_string())?;
        let g = action.group().clone();
        let k = char_kernel(&Character::new(&g, GroupElement(vec![4, 3])).unwrap());
        let c = component_for(&report, &k)?;
        let overgroups = c["overgroups"].as_array().unwrap();
        let indices: Vec<u64> = overgroups
            .iter()
            .map(|o| o["index"].as_u64().unwrap())
            .collect();
        ensure!(
            indices == [3, 2],
            "|P_K| and indices are {indices:?}, expected [3, 2]"
        );
        ensure!(
            c["dim"] == 2 * mult,
            "dim {} for multiplicity {mult}",
            c["dim"]
        );

        let mut expected = SubspaceQ::full(action.dim());
        for o in overgroups {
            let h = Subgroup::from_hnf(
                &g,
                isotypic::MatZ::from_rows(
                    o["hnf"]
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(|r| {
                            r.as_array()
                                .unwrap()
                                .iter()
                                .map(|x| x.as_i64().unwrap().into())
                                .collect()
                        })
                        .collect(),
                    g.rank(),
                )
                .unwrap(),
            )
            .map_err(|e| e.to_string())?;
            ensure!(
                h.contains_subgroup(&k)
                    && h.order() / k.order() == 6 / o["index"].as_u64().unwrap(),
                "bad overgroup {h}"
            );
            let p = action
                .complementary_subvariety(&k, &h)
                .map_err(|e| e.to_string())?;
            expected = intersect_spaces(&expected, &p).unwrap();
        }
        ensure!(
            basis_from_json(action.dim(), &c["basis"])? == expected,
            "A_W differs from P(A^K/A^H1) ∩ P(A^K/A^H2)"
        );
    }

    // Case (b): G = Z/8 x Z/4, K = ker χ_(4,2) = <ab^-1> x <b^2>.
    run_ok(
        &["fixture", "paper-example", "2", "2", "-o", "b.json"],
        path,
    )?;
    let report: Value =
        serde_json::from_str(&run_ok(&["decompose", "--json", "b.json"], path)?).unwrap();
    let action = ActionFile::parse(&std::fs::read_to_string(path.join("b.json")).unwrap())
        .and_then(|f| f.to_action())
        .map_err(|e| e.to_string())?;
    let g = action.group().clone();
    let k = char_kernel(&Character::new(&g, GroupElement(vec![4, 2])).unwrap());
    let named = Subgroup::from_generators(
        &g,
        &[g.element(&[1, -1]).unwrap(), g.element(&[0, 2]).unwrap()],
    )
    .unwrap();
    ensure!(k == named, "ker χ_(4,2) = {k}, expected <ab^-1> x <b^2>");
    ensure!(
        k.index() == 2 && k.quotient().cyclic,
        "G/K is not cyclic of order 2"
    );
    ensure!(
        k.invariants() == [2, 8],
        "K has invariants {:?}",
        k.invariants()
    );
    let c = component_for(&report, &k)?;
    let overgroups = c["overgroups"].as_array().unwrap();
    ensure!(
        overgroups.len() == 1 && overgroups[0]["index"] == 1,
        "P_K should be {{G}}, got {overgroups:?}"
    );
    let whole = Subgroup::whole(&g);
    let expected = action
        .complementary_subvariety(&k, &whole)
        .map_err(|e| e.to_string())?;
    ensure!(
        basis_from_json(action.dim(), &c["basis"])? == expected,
        "A_W ≠ P(A^K/A^G)"
    );
    Ok(format!(
        "case (a) dim {} per unit multiplicity, case (b) dim {}",
        2,
        expected.dim()
    ))
}

fn ramanujan_oracle() -> Outcome {
    let mut checked = 0;
    for n in 1..=60u64 {
        let phi = cyclotomic(n);
        for k in 0..n {
            let mut coeffs = vec![0i64; n as usize];
            for t in (1..=n).filter(|&t| gcd(t, n) == 1) {
                coeffs[((t * k) % n) as usize] += 1;
            }
            let reduced = PolyQ::from_i64(&coeffs)
                .rem(&phi)
                .map_err(|e| e.to_string())?;
            let value = reduced
                .as_constant()
                .ok_or(format!("Σ ζ^(tk) mod Φ_{n} is not constant for k = {k}"))?;
            ensure!(
                value == rat(ramanujan_sum(n, k as i64)),
                "c_{n}({k}) = {value}"
            );
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs (n, k)"))
}

fn regular_law() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    for n in 2..=30u64 {
        let file = format!("regular{n}.json");
        run_ok(
            &["fixture", "regular", &n.to_string(), "-o", &file],
            dir.path(),
        )?;
        let report: Value =
            serde_json::from_str(&run_ok(&["decompose", "--json", &file], dir.path())?).unwrap();
        let mut got: Vec<(u64, u64)> = report["components"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| (c["order"].as_u64().unwrap(), c["dim"].as_u64().unwrap()))
            .collect();
        got.sort();
        let want: Vec<(u64, u64)> = divisors(n).into_iter().map(|d| (d, totient(d))).collect();
        ensure!(
            got == want,
            "regular({n}): components {got:?}, expected {want:?}"
        );
    }
    Ok("n = 2..30".into())
}

const GOLDEN_FIXTURES: &[(&str, &[&str])] = &[
    ("regular6", &["fixture", "regular", "6"]),
    ("paper23", &["fixture", "paper-example", "2", "3"]),
    ("paper22", &["fixture", "paper-example", "2", "2"]),
    (
        "semisimple44",
        &[
            "fixture",
            "semisimple",
            "--group",
            "4,4",
            "--component",
            "1,0:2",
            "--component",
            "2,2",
        ],
    ),
    (
        "conjugated12",
        &[
            "fixture",
            "random-conjugated",
            "--group",
            "12",
            "--max-dim",
            "10",
            "--seed",
            "7",
        ],
    ),
    (
        "conjugated223",
        &[
            "fixture",
            "random-conjugated",
            "--group",
            "2,2,3",
            "--max-dim",
            "8",
            "--seed",
            "3",
        ],
    ),
];

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

fn transcript(r: &Run) -> String {
    format!(
        "exit {}\n--- stdout\n{}--- stderr\n{}",
        r.code, r.stdout, r.stderr
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path();
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut cases: Vec<(String, Vec<String>)> = Vec::new();
    for (name, args) in GOLDEN_FIXTURES {
        let file = format!("{name}.json");
        run_ok(&[args, &["-o", &file][..]].concat(), path)?;
        cases.push((
            format!("{name}.fixture"),
            args.iter().map(|s| s.to_string()).collect(),
        ));
        for cmd in ["decompose", "roan", "verify"] {
            for json in [false, true] {
                let mut a = vec![cmd.to_string(), file.clone()];
                let mut label = format!("{name}.{cmd}");
                if json {
                    a.push("--json".into());
                    label.push_str(".json");
                }
                cases.push((label, a));
            }
        }
    }
    for group in ["8,4", "12", "2,2,3"] {
        let tag = group.replace(',', "x");
        for (label, extra) in [("characters", vec![]), ("subgroups", vec!["--kernels"])] {
            for json in [false, true] {
                let mut a = vec![label.to_string(), "--group".into(), group.to_string()];
                a.extend(extra.iter().map(|s| s.to_string()));
                let mut name = format!("{label}{tag}");
                if json {
                    a.push("--json".into());
                    name.push_str(".json");
                }
                cases.push((name, a));
            }
        }
    }
    cases.push((
        "error.missing-file".into(),
        vec!["decompose".into(), "missing.json".into()],
    ));

    let gdir = golden_dir();
    if update {
        std::fs::create_dir_all(&gdir).unwrap();
    }
    let mut written = 0;
    for (name, args) in &cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = transcript(&run(&args, path));
        let second = transcript(&run(&args, path));
        ensure!(first == second, "{name}: two runs differ");
        let golden = gdir.join(format!("{name}.txt"));
        if update {
            std::fs::write(&golden, &first).unwrap();
            written += 1;
        } else {
            let want = std::fs::read_to_string(&golden)
                .map_err(|e| format!("{}: {e} (run with UPDATE_GOLDEN=1)", golden.display()))?;
            ensure!(
                first == want,
                "{name}: output differs from {}",
                golden.display()
            );
        }
    }
    Ok(if update {
        format!("{written} golden files written")
    } else {
        format!("{} commands", cases.len())
    })
}

//! Acceptance criteria. Each criterion prints one PASS or FAIL line with
//! its runtime; the process exits nonzero if any fails. Oracles are brute
//! force over cells and never call the decider under test.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{
    all_pairs, bounds_preserved, decode, maps, min_realizers_by_signature, names, posetal_oracle, precompose,
    preorderal_oracle, signature, subsets, uniform, OracleFiber,
};
use prkit::appstruct::{Pas, Subset, DEFAULT_SIGMA_CAP};
use prkit::canonical::{canonicalize, degree, equivalent, is_p_structure, pointwise_cutoff, pumping_structures, reduce_dominated};
use prkit::catalog::{cyclic_group, enumerate_pas, enumerate_pr, random_pas, random_permutation, random_pr, sigma_n, two_element_lattical};
use prkit::completeness::{incompleteness_witness, is_fiber_complete, verify_certificate, DEFAULT_MAX_FAMILIES};
use prkit::fiber::{Fiber, DEFAULT_MAX_FIBER};
use prkit::order::{find_bounds_witness, find_preorder_witness, is_bounded_posetal, is_posetal, is_preorderal};
use prkit::{BinRel, PairSet, PrStructure, PropId};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn structures(max_props: usize, max_reals: usize) -> Vec<PrStructure> {
    (1..=max_props)
        .flat_map(|p| (1..=max_reals).flat_map(move |r| enumerate_pr(p, r, 1 << 20).unwrap()))
        .collect()
}

fn sigma(pas: &Pas) -> PrStructure {
    pas.induce_sigma(DEFAULT_SIGMA_CAP).unwrap()
}

fn ac1() -> Check {
    for n in 1..=6 {
        let s = sigma_n(n).map_err(|e| e.to_string())?;
        ensure(is_posetal(&s), || format!("sigma_{n} not posetal"))?;
        ensure(degree(&s) == n, || format!("degree(sigma_{n}) = {}", degree(&s)))?;
    }
    Ok(())
}

fn ac2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (i, s) in random_pr(3, 6, 17).take(1000).enumerate() {
        let c = canonicalize(&s);
        for (x, a) in c.antichain().iter().enumerate() {
            for (y, b) in c.antichain().iter().enumerate() {
                ensure(x == y || !a.is_subset(b), || format!("sample {i}: members {x} and {y} are nested"))?;
            }
        }
        let perm = random_permutation(s.n_reals(), &mut rng);
        let t = s.permute_realizers(&perm).unwrap();
        ensure(canonicalize(&t) == c, || format!("sample {i}: canonical form depends on realizer order"))?;
        ensure(equivalent(&s, &reduce_dominated(&s)).holds(), || format!("sample {i}: reduction not equivalent"))?;
        ensure(signature(&s) == signature(&reduce_dominated(&s)), || format!("sample {i}: reduction changes entailment"))?;
    }
    Ok(())
}

fn ac3() -> Check {
    let mut count = 0;
    for p in 1..=2 {
        let least = min_realizers_by_signature(p, 3);
        for r in 1..=3 {
            for s in enumerate_pr(p, r, 1 << 20).unwrap() {
                count += 1;
                let best = least[&signature(&s)];
                ensure(best == degree(&s), || format!("{s:?}: degree {} but {best} realizers suffice", degree(&s)))?;
            }
        }
    }
    ensure(count >= 4096, || format!("only {count} structures"))
}

fn ac4() -> Check {
    for s in structures(2, 2) {
        let pointwise = subsets(&all_pairs(s.n_props())).iter().all(|t| {
            let set = PairSet::from_pairs(s.n_props(), t.iter().map(|&(a, b)| (PropId(a), PropId(b))));
            let each = t.iter().all(|&(a, b)| s.entails(PropId(a), PropId(b)).unwrap());
            s.entails_pairset(&set).unwrap() == each
        });
        ensure(is_p_structure(&s) == pointwise, || format!("{s:?}: is_p_structure disagrees"))?;
    }
    Ok(())
}

fn ac5() -> Check {
    for s in structures(2, 2) {
        ensure(find_preorder_witness(&s).is_some() == preorderal_oracle(&s), || format!("{s:?}: preorderal"))?;
        let bounded = posetal_oracle(&s) && bounds_preserved(&s, s.n_props());
        ensure(is_bounded_posetal(&s) == bounded, || format!("{s:?}: bounded-posetal"))?;
        if posetal_oracle(&s) {
            ensure(find_bounds_witness(&s).is_some() == bounds_preserved(&s, s.n_props()), || {
                format!("{s:?}: bounds witness")
            })?;
        }
    }
    Ok(())
}

/// Every fiber over `1..=depth` indices is a bounded lattice, and
/// precomposition with every map among those sizes preserves bounds, binary
/// meets and binary joins.
fn lattice_fibers_preserved(s: &PrStructure, depth: usize) -> Check {
    let p = s.n_props();
    let fibers: Vec<OracleFiber> = (0..=depth).map(|k| OracleFiber::new(s, k)).collect();
    let show = |k: usize, x: usize| -> Vec<&str> { decode(p, k, x).iter().map(|&a| s.prop_name(PropId(a))).collect() };
    for k in 1..=depth {
        let f = &fibers[k];
        let (Some(lo), Some(hi)) = (f.minimum(), f.maximum()) else {
            return Err(format!("fiber over {k} has no bounds"));
        };
        for x in 0..f.size {
            for y in 0..f.size {
                let (Some(join), Some(meet)) = (f.join(x, y), f.meet(x, y)) else {
                    return Err(format!("fiber over {k}: {:?} and {:?} lack a meet or join", show(k, x), show(k, y)));
                };
                for (j, g) in fibers.iter().enumerate().skip(1) {
                    let same = |a: usize, b: usize| g.le(a, b) && g.le(b, a);
                    for m in maps(j, k) {
                        let (mx, my) = (precompose(p, k, x, &m), precompose(p, k, y, &m));
                        let mj = g.join(mx, my).expect("fiber j is a lattice");
                        let mm = g.meet(mx, my).expect("fiber j is a lattice");
                        if !same(precompose(p, k, join, &m), mj) {
                            return Err(format!(
                                "map {m:?}: join of {:?} and {:?} is {:?}, restricting to {:?}, but the join of the restrictions is {:?}",
                                show(k, x),
                                show(k, y),
                                show(k, join),
                                show(j, precompose(p, k, join, &m)),
                                show(j, mj)
                            ));
                        }
                        if !same(precompose(p, k, meet, &m), mm) {
                            return Err(format!("map {m:?}: meet of {:?} and {:?} not preserved", show(k, x), show(k, y)));
                        }
                        let (tlo, thi) = (g.minimum().unwrap(), g.maximum().unwrap());
                        if !same(precompose(p, k, lo, &m), tlo) || !same(precompose(p, k, hi, &m), thi) {
                            return Err(format!("map {m:?}: bounds of fiber over {k} not preserved"));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn ac6() -> Check {
    let s = two_element_lattical();
    ensure(posetal_oracle(&s) && is_posetal(&s), || "not posetal".into())?;
    ensure(is_bounded_posetal(&s), || "not bounded-posetal".into())?;
    ensure(!is_p_structure(&s), || "is a P-structure".into())?;
    ensure(degree(&s) == 3, || format!("degree {}", degree(&s)))?;
    lattice_fibers_preserved(&s, 3)
}

/// `[r]` fixes `s`, or iterating it from `s` reaches an undefined
/// application before revisiting a value.
fn orbit_oracle(pas: &Pas, r: usize, s: usize) -> bool {
    let app = |x| pas.apply(r, x).unwrap();
    if app(s) == Some(s) {
        return true;
    }
    let mut seen = vec![s];
    let mut x = s;
    loop {
        match app(x) {
            None => return true,
            Some(y) if seen.contains(&y) => return false,
            Some(y) => {
                seen.push(y);
                x = y;
            }
        }
    }
}

fn ac7() -> Check {
    let two: Vec<Pas> = enumerate_pas(2, true, 1 << 20).unwrap().collect();
    ensure(two.len() == 81, || format!("{} partial magmas on 2 elements", two.len()))?;
    for pas in two.iter().cloned().chain(random_pas(3, true, 77).take(1000)) {
        if !is_posetal(&sigma(&pas)) {
            continue;
        }
        for r in pas.elements() {
            for s in pas.elements() {
                ensure(orbit_oracle(&pas, r, s), || format!("{pas:?}: posetal but orbit of {s} under {r} cycles"))?;
                ensure(pas.orbit_condition(r, s).unwrap(), || format!("{pas:?}: orbit_condition({r}, {s})"))?;
            }
        }
    }
    let totals = enumerate_pas(2, false, 1 << 20).unwrap().chain(enumerate_pas(3, false, 1 << 20).unwrap());
    for pas in totals {
        let law = pas.elements().all(|x| pas.elements().all(|y| pas.apply(x, y).unwrap() == Some(y)));
        ensure(is_posetal(&sigma(&pas)) == law, || format!("{pas:?}: posetal differs from x.y = y"))?;
    }
    Ok(())
}

fn ac8() -> Check {
    for pas in enumerate_pas(2, true, 1 << 20).unwrap() {
        let decided = is_preorderal(&sigma(&pas));
        ensure(pas.preorder_witness().is_some() == decided, || format!("{pas:?}: witness vs preorderal={decided}"))?;
    }
    Ok(())
}

fn family_lacks_supremum(oracle: &OracleFiber, members: &[usize]) -> bool {
    let ub: Vec<usize> = (0..oracle.size)
        .filter(|&x| members.iter().all(|&m| oracle.le(m, x)))
        .collect();
    !ub.iter().any(|&x| ub.iter().all(|&u| oracle.le(x, u)))
}

fn ac9() -> Check {
    for n in [2, 3] {
        let pas = cyclic_group(n).unwrap();
        let cert = incompleteness_witness(&pas, 0, 1 << 20).map_err(|e| format!("Z/{n}: {e}"))?;
        ensure(verify_certificate(&pas, &cert), || format!("Z/{n}: certificate does not verify"))?;
    }
    let pas = cyclic_group(2).unwrap();
    let s = sigma(&pas);
    let report = is_fiber_complete(&s, 2, DEFAULT_MAX_FAMILIES).map_err(|e| e.to_string())?;
    ensure(!report.complete, || "exhaustive search found every supremum".into())?;
    ensure(report.fiber_size == 16, || format!("fiber size {}", report.fiber_size))?;
    let oracle = OracleFiber::new(&s, 2);
    ensure(family_lacks_supremum(&oracle, report.counterexample.as_deref().unwrap_or(&[])), || {
        "exhaustive counterexample has a supremum".into()
    })?;
    // every family, against the brute-force order
    let order = prkit::completeness::FiberOrder::from_fiber(&Fiber::new(&s, 2, DEFAULT_MAX_FIBER).unwrap()).unwrap();
    let mut missing = 0;
    for mask in 0u64..1 << 16 {
        let members: Vec<usize> = (0..16).filter(|&x| mask & (1 << x) != 0).collect();
        let lacks = family_lacks_supremum(&oracle, &members);
        ensure(lacks != order.has_supremum(mask), || format!("family mask {mask:#x}: orders disagree"))?;
        missing += lacks as usize;
    }
    ensure(missing > 0, || "no family lacks a supremum".into())?;

    let cert = incompleteness_witness(&pas, 0, 1 << 20).unwrap();
    let fiber = Fiber::new(&s, 2, DEFAULT_MAX_FIBER).unwrap();
    let members: Vec<usize> = cert
        .family
        .iter()
        .map(|e| {
            let tuple: Vec<PropId> = e
                .iter()
                .map(|set| PropId(Subset::from_elems(set.iter().copied()).0 as usize))
                .collect();
            fiber.encode(&tuple)
        })
        .collect();
    ensure(family_lacks_supremum(&oracle, &members), || "certified family has a supremum".into())?;
    let mask = members.iter().fold(0u64, |m, &x| m | 1 << x);
    ensure(!order.has_supremum(mask), || "exhaustive order finds a supremum for the certified family".into())
}

/// Smallest pair set whose members are each entailed but which is not
/// uniformly entailed.
fn cutoff_oracle(s: &PrStructure) -> Option<usize> {
    subsets(&all_pairs(s.n_props()))
        .iter()
        .filter(|t| t.iter().all(|&pair| uniform(s, &[pair])) && !uniform(s, t))
        .map(Vec::len)
        .min()
}

fn ac10() -> Check {
    let psi = BinRel::full(names("a", 2)).unwrap();
    let n = 2;
    let (first, second) = pumping_structures(&psi, n).map_err(|e| e.to_string())?;
    let c1 = pointwise_cutoff(&first, 1 << 20).map_err(|e| e.to_string())?;
    let c2 = pointwise_cutoff(&second, 1 << 20).map_err(|e| e.to_string())?;
    ensure(c1 == cutoff_oracle(&first) && c2 == cutoff_oracle(&second), || {
        format!("library cutoffs {c1:?}, {c2:?} disagree with brute force")
    })?;
    // pointwise below n (resp. |psi|), not pointwise at it
    ensure(c1 == Some(n), || format!("first structure cutoff {c1:?}, expected {n}"))?;
    ensure(c2 == Some(psi.len()), || format!("second structure cutoff {c2:?}, expected {}", psi.len()))
}

fn cli(args: &[&str], stdin: &str) -> Result<String, String> {
    let out = prkit_cli::run(std::iter::once("prkit").chain(args.iter().copied()), &mut stdin.as_bytes());
    if out.code == 0 {
        Ok(out.stdout)
    } else {
        Err(format!("{args:?} exited {}: {}", out.code, out.stderr))
    }
}

fn ac11() -> Check {
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cases: [(&str, &[&str]); 6] = [
        ("sigma_1", &["gen", "sigma-n", "1"]),
        ("sigma_2", &["gen", "sigma-n", "2"]),
        ("sigma_3", &["gen", "sigma-n", "3"]),
        ("sigma_4", &["gen", "sigma-n", "4"]),
        ("two_element_lattical", &["gen", "two-element-lattical"]),
        ("sigma_z2", &["gen", "z-mod", "2"]),
    ];
    for (name, gen) in cases {
        let doc = cli(gen, "")?;
        let reparsed = prkit::format::parse_document(&doc).map_err(|e| e.to_string())?;
        ensure(prkit::format::document_to_json(&reparsed) == doc, || format!("{name}: document does not round-trip"))?;
        let a = cli(&["canonical"], &doc)?;
        let b = cli(&["canonical"], &doc)?;
        ensure(a == b, || format!("{name}: output differs between runs"))?;
        let expected = std::fs::read_to_string(golden.join(format!("{name}.canonical.json"))).map_err(|e| e.to_string())?;
        ensure(a == expected, || format!("{name}: output differs from golden file"))?;
    }
    Ok(())
}

struct Criterion {
    id: &'static str,
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: "AC1", name: "sigma_n posetal with degree n", limit: secs(1), run: ac1 },
        Criterion { id: "AC2", name: "canonicalization on 1000 seeded structures", limit: secs(10), run: ac2 },
        Criterion { id: "AC3", name: "degree minimality, exhaustive", limit: secs(30), run: ac3 },
        Criterion { id: "AC4", name: "P-structure characterization, exhaustive", limit: secs(5), run: ac4 },
        Criterion { id: "AC5", name: "preorder and bounds witnesses, exhaustive", limit: secs(10), run: ac5 },
        Criterion { id: "AC6", name: "two-element lattical example", limit: secs(5), run: ac6 },
        Criterion { id: "AC7", name: "orbit condition and magma law", limit: secs(60), run: ac7 },
        Criterion { id: "AC8", name: "applicative preorder witness, exhaustive", limit: secs(30), run: ac8 },
        Criterion { id: "AC9", name: "incompleteness of small group fibers", limit: secs(120), run: ac9 },
        Criterion { id: "AC10", name: "pumping structure cutoffs", limit: secs(1), run: ac10 },
        Criterion { id: "AC11", name: "CLI golden canonical outputs", limit: secs(5), run: ac11 },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let took = start.elapsed();
        let verdict = match result {
            Ok(()) if took <= c.limit => Ok(()),
            Ok(()) => Err(format!("took {took:.2?}, limit {:?}", c.limit)),
            Err(e) => Err(e),
        };
        match verdict {
            Ok(()) => println!("{} {} ... PASS ({took:.2?})", c.id, c.name),
            Err(e) => {
                failed += 1;
                println!("{} {} ... FAIL ({took:.2?}): {e}", c.id, c.name);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

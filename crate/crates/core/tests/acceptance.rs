//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! lines reach the terminal under `cargo test`.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;
use omact::corpus::{self, NamedPerspective};
use omact::orientation::{self, ActivePartition};
use omact::poly::{MultiPoly, Var};
use omact::subsets::{self, ext_act, int_act, p_set, q_set};
use omact::tutte::{self, Poly};
use omact::{ElementSet, MatroidPerspective, OMPerspective, Rational, SizeGuard};

/// Criterion 1 covers the built-ins plus this many seeded random minors.
const RANDOM_COUNT: usize = 50;
const CORPUS_SEED: u64 = 0;
const RUNTIME_LIMIT: Duration = Duration::from_secs(60);
/// Exhaustive checks over 2^E run up to this ground set size.
const EXHAUSTIVE_MAX: usize = 8;
const DETERMINISM_SEED: &str = "7";

const K4_FROZEN: &str = "x^3 + y^3 + 3*x^2 + 4*x*y + 3*y^2 + 2*x + 2*y";

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn guard() -> SizeGuard {
    SizeGuard::default()
}

fn corpus_all() -> Vec<NamedPerspective> {
    corpus::corpus(CORPUS_SEED, RANDOM_COUNT)
}

fn rank_def(p: &OMPerspective) -> Poly {
    tutte::tutte_rank_def(p.underlying(), guard()).unwrap()
}

fn at_z1(t: &Poly) -> Poly {
    t.substitute(&[(Var::Z, MultiPoly::one())])
}

fn shift_uv(t: &Poly) -> Poly {
    t.substitute(&[
        (Var::X, &MultiPoly::var(Var::X) + &MultiPoly::var(Var::U)),
        (Var::Y, &MultiPoly::var(Var::Y) + &MultiPoly::var(Var::V)),
    ])
}

fn mismatch(name: &str, what: &str, a: &Poly, b: &Poly) -> String {
    format!("{name}: {what}: difference {}", a - b)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let all = corpus_all();
    let random = all.iter().filter(|np| np.name.starts_with("random")).count();
    if random < RANDOM_COUNT {
        return Err(format!("only {random} random perspectives"));
    }
    for np in &all {
        let p = &np.perspective;
        let lhs = at_z1(&rank_def(p));
        let rhs = tutte::tutte_orientation_activity(p, guard()).map_err(|e| format!("{}: {e}", np.name))?;
        if lhs != rhs {
            return Err(mismatch(&np.name, "rank definition vs orientation activities", &lhs, &rhs));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= RUNTIME_LIMIT {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{} perspectives ({random} random), {elapsed:.2?}", all.len()))
}

fn criterion_2() -> Outcome {
    let all = corpus_all();
    for np in &all {
        let p = &np.perspective;
        let expected = shift_uv(&tutte::tutte_orientation_activity(p, guard()).unwrap());
        let got = tutte::tutte_orientation_4var(p, guard()).unwrap();
        if got != expected {
            return Err(mismatch(&np.name, "4-variable expansion", &got, &expected));
        }
    }
    Ok(format!("{} perspectives", all.len()))
}

fn criterion_3() -> Outcome {
    let all = corpus_all();
    let x = || MultiPoly::var(Var::X);
    let y = || MultiPoly::var(Var::Y);
    let one = MultiPoly::<Rational>::one;
    for np in &all {
        let p = np.perspective.underlying();
        let t = tutte::tutte_rank_def(p, guard()).unwrap();
        let five = tutte::tutte_subset_5var(p, guard()).unwrap();
        if five != shift_uv(&t) {
            return Err(mismatch(&np.name, "5-variable expansion", &five, &shift_uv(&t)));
        }
        let subset = tutte::tutte_subset_activity(p, guard()).unwrap();
        let s1 = five.substitute(&[(Var::U, MultiPoly::zero()), (Var::V, MultiPoly::zero())]);
        if s1 != subset {
            return Err(mismatch(&np.name, "(x,0,y,0,z) specialization", &s1, &subset));
        }
        let s2 = five.substitute(&[
            (Var::X, one()),
            (Var::U, &x() - &one()),
            (Var::Y, one()),
            (Var::V, &y() - &one()),
        ]);
        if s2 != t {
            return Err(mismatch(&np.name, "(1,x-1,1,y-1,z) specialization", &s2, &t));
        }
    }
    Ok(format!("{} perspectives", all.len()))
}

fn parts(part: &ActivePartition) -> Vec<ElementSet> {
    let mut all = part.cyclic.clone();
    all.push(part.hybrid);
    all.extend(part.acyclic.iter().copied());
    all.retain(|s| !s.is_empty());
    all
}

fn criterion_4() -> Outcome {
    let mut checked = 0u64;
    for np in corpus_all().iter().filter(|np| np.perspective.len() <= EXHAUSTIVE_MAX) {
        let p = &np.perspective;
        let g = p.ground();
        for a in g.full().subsets() {
            let base = orientation::partition_at(p, a).unwrap();
            let ps = parts(&base);
            for pick in 0u64..(1 << ps.len()) {
                let u = ps
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| pick >> i & 1 == 1)
                    .fold(ElementSet::default(), |acc, (_, &s)| acc | s);
                let other = orientation::partition_at(p, a ^ u).unwrap();
                if (&other.cyclic, other.hybrid, &other.acyclic) != (&base.cyclic, base.hybrid, &base.acyclic) {
                    return Err(format!(
                        "{}: reorienting {} by {} changes the active partition",
                        np.name,
                        g.fmt_set(a),
                        g.fmt_set(u)
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (A, U) pairs"))
}

fn tij(t1: &Poly, i: usize, j: usize) -> Rational {
    t1.coefficient(&[i as u32, j as u32, 0, 0, 0])
}

fn criterion_5() -> Outcome {
    for np in corpus_all() {
        let p = &np.perspective;
        let g = p.ground();
        let classes = orientation::classify_reorientations(p, guard()).unwrap();
        let mut seen = vec![false; 1 << p.len()];
        let mut by_activity: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for c in &classes {
            for &m in &c.members {
                let slot = &mut seen[m.bits() as usize];
                if *slot {
                    return Err(format!("{}: {} in two classes", np.name, g.fmt_set(m)));
                }
                *slot = true;
            }
            let fixed = c
                .members
                .iter()
                .filter(|&&m| orientation::theta(p, m).unwrap().is_fixed())
                .count();
            if fixed != 1 {
                return Err(format!("{}: class of {} has {fixed} fixed members", np.name, g.fmt_set(c.representative)));
            }
            *by_activity.entry((c.iota, c.epsilon)).or_default() += 1;
        }
        if let Some(a) = seen.iter().position(|s| !s) {
            return Err(format!("{}: {} in no class", np.name, g.fmt_set(ElementSet::from_bits(a as u64))));
        }
        let t1 = at_z1(&rank_def(p));
        for (exp, coef) in t1.terms() {
            let count = by_activity.get(&(exp[0] as usize, exp[1] as usize)).copied().unwrap_or(0);
            if *coef != Rational::from_integer(BigInt::from(count)) {
                return Err(format!("{}: t_{},{} = {coef} but {count} classes", np.name, exp[0], exp[1]));
            }
        }
        for (&(i, j), &count) in &by_activity {
            if tij(&t1, i, j) != Rational::from_integer(BigInt::from(count)) {
                return Err(format!("{}: {count} classes at ({i},{j}) but no matching coefficient", np.name));
            }
        }
    }
    let p = corpus::persp1();
    let t1 = at_z1(&rank_def(&p));
    let want = [((1, 0), 2), ((0, 1), 1), ((0, 0), 2)];
    for ((i, j), c) in want {
        if tij(&t1, i, j) != Rational::from_integer(BigInt::from(c)) {
            return Err(format!("PERSP1: t_{i},{j} != {c}"));
        }
    }
    if t1.terms().count() != want.len() {
        return Err("PERSP1: extra coefficients".into());
    }
    let five = tutte::evaluate(&rank_def(&p), 1, 1, 1);
    if five != Rational::from_integer(5.into()) {
        return Err(format!("PERSP1: t(1,1,1) = {five}"));
    }
    Ok("classes partition 2^E; PERSP1 {(1,0):2,(0,1):1,(0,0):2}, t(1,1,1)=5".into())
}

/// Counts of the Table 1 conditions, straight from the definitions.
fn census_oracle(p: &OMPerspective) -> [u64; 9] {
    let mut counts = [0u64; 9];
    for a in p.ground().full().subsets() {
        let acyclic = p.m().positive_circuits_after(a).next().is_none();
        let totally_cyclic = p.n().positive_cocircuits_after(a).next().is_none();
        let th = orientation::theta(p, a).unwrap();
        let active_fixed = th.active_reoriented.is_empty();
        let dual_fixed = th.dual_active_reoriented.is_empty();
        let rows = [
            true,
            acyclic,
            totally_cyclic,
            acyclic && dual_fixed,
            active_fixed && totally_cyclic,
            active_fixed,
            dual_fixed,
            active_fixed && dual_fixed,
            acyclic && totally_cyclic,
        ];
        for (c, hit) in counts.iter_mut().zip(rows) {
            *c += u64::from(hit);
        }
    }
    counts
}

fn criterion_6() -> Outcome {
    for np in corpus_all() {
        let p = &np.perspective;
        let t = rank_def(p);
        let rows = tutte::reorientation_census(p, guard()).unwrap();
        let oracle = census_oracle(p);
        if rows.len() != tutte::Condition::ALL.len() {
            return Err(format!("{}: {} census rows", np.name, rows.len()));
        }
        for (row, want) in rows.iter().zip(oracle) {
            let (x, y) = row.condition.point();
            let value = tutte::evaluate(&t, x, y, 1);
            if row.reorientations != want || value != Rational::from_integer(BigInt::from(want)) {
                return Err(format!(
                    "{}: {}: counted {want}, census {}, t({x},{y},1) = {value}",
                    np.name,
                    row.condition.describe(),
                    row.reorientations
                ));
            }
        }
    }
    let spot = |name: &str, x, y, want: i64| -> std::result::Result<(), String> {
        let p = corpus::perspective(name).unwrap();
        let v = tutte::evaluate(&rank_def(&p), x, y, 1);
        if v == Rational::from_integer(want.into()) {
            Ok(())
        } else {
            Err(format!("{name}: t({x},{y},1) = {v}, expected {want}"))
        }
    };
    spot("PERSP1", 2, 2, 8)?;
    spot("PERSP1", 0, 0, 2)?;
    spot("PERSP1", 1, 2, 6)?;
    spot("CYC3", 2, 0, 6)?;
    spot("CYC3", 0, 2, 2)?;
    Ok("all rows equal their evaluations".into())
}

fn criterion_7() -> Outcome {
    let mut members = 0u64;
    for np in corpus_all().iter().filter(|np| np.perspective.len() <= EXHAUSTIVE_MAX) {
        let p: &MatroidPerspective = np.perspective.underlying();
        let g = p.ground();
        let (m, n) = (p.m(), p.n());
        let intervals = subsets::dawson_partition(p).unwrap();
        let mut hits = vec![0u32; 1 << p.len()];
        for iv in &intervals {
            for a in iv.members() {
                hits[a.bits() as usize] += 1;
                members += 1;
                let fail = |what: &str| Err(format!("{}: {what} at A = {}", np.name, g.fmt_set(a)));
                if subsets::rcd(p, a) != iv.rcd {
                    return fail("rcd not constant");
                }
                if int_act(n, a) != (iv.int_set & a) {
                    return fail("Int_N(A) = Int_N(B) ∩ A");
                }
                if p_set(n, a) != (iv.int_set - a) {
                    return fail("P_N(A) = Int_N(B) \\ A");
                }
                if ext_act(m, a) != (iv.ext_set - a) {
                    return fail("Ext_M(A) = Ext_M(B) \\ A");
                }
                if q_set(m, a) != (iv.ext_set & a) {
                    return fail("Q_M(A) = Ext_M(B) ∩ A");
                }
            }
        }
        if let Some(a) = hits.iter().position(|&h| h != 1) {
            return Err(format!("{}: subset #{a} covered {} times", np.name, hits[a]));
        }
        for a in g.full().subsets() {
            for mat in [m, n] {
                let r = mat.rank_of(a);
                if p_set(mat, a).len() != mat.rank() - r || q_set(mat, a).len() != a.len() - r {
                    return Err(format!("{}: |P| or |Q| wrong at A = {}", np.name, g.fmt_set(a)));
                }
            }
        }
    }
    Ok(format!("{members} interval members"))
}

fn factorial(k: usize) -> Rational {
    (1..=k).fold(Rational::one(), |acc, i| acc * Rational::from_integer(i.into()))
}

fn criterion_8() -> Outcome {
    let mut pairs = 0u64;
    for np in corpus_all() {
        let p = &np.perspective;
        let t1 = at_z1(&rank_def(p));
        let (rm, rn) = (p.m().rank(), p.n().rank());
        let thetas: Vec<_> = p
            .ground()
            .full()
            .subsets()
            .map(|a| orientation::theta(p, a).unwrap())
            .collect();
        for pp in 0..=rn {
            for qq in 0..=(p.len() - rm) {
                let lhs = t1.derivative(Var::X, pp as u32).derivative(Var::Y, qq as u32);
                let mut sum = MultiPoly::zero();
                for th in thetas
                    .iter()
                    .filter(|th| th.dual_active_reoriented.len() == pp && th.active_reoriented.len() == qq)
                {
                    let mut exp = [0u32; 5];
                    exp[0] = th.dual_active.len() as u32;
                    exp[1] = th.active.len() as u32;
                    sum = &sum + &MultiPoly::monomial(exp, Rational::one());
                }
                let rhs = sum.scale(&(factorial(pp) * factorial(qq)));
                if lhs != rhs {
                    return Err(mismatch(&np.name, &format!("derivative p={pp} q={qq}"), &lhs, &rhs));
                }
                if pp == 0 && qq == 0 && rhs != tutte::tutte_orientation_activity(p, guard()).unwrap() {
                    return Err(format!("{}: p=q=0 differs from the orientation expansion", np.name));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} (perspective, p, q) cases"))
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * i64::from(n - i) / i64::from(i + 1))
}

/// Integer coefficients of the rank definition, expanding (x-1)^i (y-1)^j by hand.
fn rank_oracle(p: &MatroidPerspective) -> BTreeMap<[u32; 3], i64> {
    let (m, n) = (p.m(), p.n());
    let mut out: BTreeMap<[u32; 3], i64> = BTreeMap::new();
    for a in p.ground().full().subsets() {
        let i = (n.rank() - n.rank_of(a)) as u32;
        let j = (a.len() - m.rank_of(a)) as u32;
        let k = (m.rank() - n.rank() - (m.rank_of(a) - n.rank_of(a))) as u32;
        for s in 0..=i {
            for t in 0..=j {
                let sign = if (i - s + j - t).is_multiple_of(2) { 1 } else { -1 };
                *out.entry([s, t, k]).or_default() += sign * binomial(i, s) * binomial(j, t);
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn matches_oracle(t: &Poly, oracle: &BTreeMap<[u32; 3], i64>) -> bool {
    let mine: BTreeMap<[u32; 3], Rational> = t
        .terms()
        .map(|(e, c)| ([e[0], e[1], e[2]], c.clone()))
        .collect();
    mine.len() == oracle.len()
        && oracle
            .iter()
            .all(|(e, &c)| mine.get(e) == Some(&Rational::from_integer(BigInt::from(c))))
}

fn criterion_9() -> Outcome {
    for np in corpus_all() {
        let t = rank_def(&np.perspective);
        if !matches_oracle(&t, &rank_oracle(np.perspective.underlying())) {
            return Err(format!("{}: rank definition disagrees with the oracle: {t}", np.name));
        }
    }
    let want = [("CYC3", "x^2 + x + y"), ("PERSP1", "x*z + z + x + y + 1"), ("K4", K4_FROZEN)];
    for (name, text) in want {
        let t = rank_def(&corpus::perspective(name).unwrap());
        if t.to_string() != text {
            return Err(format!("{name}: {t}, expected {text}"));
        }
    }
    Ok("triangle, PERSP1, K4 and the oracle agree".into())
}

fn criterion_10() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_omact"))
            .args(["verify", "--corpus", "--seed", DETERMINISM_SEED])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    if !a.status.success() {
        return Err(format!("exit {:?}: {}", a.status.code(), String::from_utf8_lossy(&a.stdout)));
    }
    if a.stdout != b.stdout || a.stdout.is_empty() {
        return Err("reports differ".into());
    }
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("identity (i): rank definition at z=1 = orientation activities", criterion_1),
        ("4-variable orientation expansion", criterion_2),
        ("5-variable subset expansion and its specializations", criterion_3),
        ("active partition invariant under reorienting unions of parts", criterion_4),
        ("activity classes and t_ij", criterion_5),
        ("reorientation census", criterion_6),
        ("interval partition of 2^E", criterion_7),
        ("derivative identity", criterion_8),
        ("known exact values", criterion_9),
        ("determinism of verify --corpus", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail})", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

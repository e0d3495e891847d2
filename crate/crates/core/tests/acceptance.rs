//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Failing criteria are reported but do not abort the run unless
//! `CDTWIST_ACCEPTANCE_STRICT=1` is set.

mod common;

use std::time::{Duration, Instant};

use cdtwist::algebra::verify::{verify_twist_vs_oracle, Mode};
use cdtwist::algebra::zero_divisor::{find_zero_divisor, Family};
use cdtwist::cli::bench;
use cdtwist::nonassoc::{self, NonAssocQuaternion};
use cdtwist::twist::{self, xor_index, BasisIndex};
use cdtwist::{CdAlgebra, Element, Gammas, QuadExt, QuadField, Rational, Scalar, SparsePoly};
use common::{concrete_gammas, q, random_rational, random_symbolic, run_cli};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TABLE_LIMIT: Duration = Duration::from_secs(1);
const EXHAUSTIVE_LIMIT: Duration = Duration::from_secs(10);
const RANDOM_LIMIT: Duration = Duration::from_secs(30);
const ZERO_DIVISOR_LIMIT: Duration = Duration::from_secs(5);
const NONASSOC_LIMIT: Duration = Duration::from_secs(10);
const BENCH_LIMIT: Duration = Duration::from_secs(5);
/// Allowed slack over linear growth of per-product cost, relative to t = 5.
const SCALING_FACTOR: f64 = 4.0;
const BENCH_REPEATS: usize = 5;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(label: &str, elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{label} took {elapsed:.2?}, limit {limit:?}"))
}

fn fixture(t: u32) -> Vec<Vec<String>> {
    let path = format!("{}/tests/fixtures/table_t{t}.txt", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path)
        .expect("fixture")
        .lines()
        .map(|l| l.split_whitespace().map(str::to_string).collect())
        .collect()
}

fn golden_tables() -> Outcome {
    let mut cells = 0;
    for t in 1..=4u32 {
        let start = Instant::now();
        let (code, out, err) = run_cli(&["table", "--t", &t.to_string()]);
        within(&format!("table --t {t}"), start.elapsed(), TABLE_LIMIT)?;
        ensure(code == 0, || format!("table --t {t} exited {code}: {err}"))?;
        let got: Vec<Vec<String>> = out
            .lines()
            .skip(2)
            .map(|l| l.split('|').skip(1).map(|c| c.trim().to_string()).collect())
            .collect();
        let want = fixture(t);
        for (p, (g, w)) in got.iter().zip(&want).enumerate() {
            for (qq, (a, b)) in g.iter().zip(w).enumerate() {
                ensure(a == b, || format!("t={t} f{p} f{qq}: {a} != {b}"))?;
            }
        }
        ensure(got.len() == want.len() && got.iter().all(|r| r.len() == 1 << t), || format!("t={t} shape"))?;
        cells += 1 << (2 * t);
    }
    Ok(format!("{cells} cells for t = 1..4"))
}

/// `(sign, level, p, q)` steps of a written chain such as
/// `theta3(6,7) = theta2(2,3) = -theta1(0,1) = -1`.
fn parse_chain(s: &str) -> (Vec<(char, u32, u64, u64)>, char) {
    let mut parts: Vec<&str> = s.split(" = ").collect();
    let value = parts.pop().unwrap().chars().next().unwrap();
    let steps = parts
        .iter()
        .map(|p| {
            let (sign, rest) = match p.strip_prefix('-') {
                Some(r) => ('-', r),
                None => ('+', p.trim_start_matches('+')),
            };
            let rest = rest.strip_prefix("theta").unwrap();
            let (level, args) = rest.split_once('(').unwrap();
            let (a, b) = args.trim_end_matches(')').split_once(',').unwrap();
            (sign, level.parse().unwrap(), a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    (steps, value)
}

fn worked_examples() -> Outcome {
    // products and sign chains as written in the worked examples
    let cases = [
        (3, 3, 5, "+g1 * f6", "theta3(3,5) = -theta2(3,1) = +theta1(1,1) = +1"),
        (3, 6, 7, "-g2*g3 * f1", "theta3(6,7) = theta2(2,3) = -theta1(0,1) = -1"),
        (3, 6, 2, "-g2 * f4", "theta3(6,2) = -theta2(2,2) = -theta1(1,1) = -1"),
        (4, 4, 12, "+g3 * f8", "theta4(4,12) = theta3(4,4) = theta2(0,0) = +1"),
        (4, 10, 3, "+g2 * f9", "theta4(10,3) = -theta3(2,3) = -theta2(2,3) = +theta1(0,1) = +1"),
        (4, 9, 14, "-g4 * f7", "theta4(9,14) = theta3(1,6) = -theta2(1,2) = -theta1(1,1) = -1"),
    ];
    let mut notes = Vec::new();
    for (t, p, qq, product, chain) in cases {
        let (code, out, err) =
            run_cli(&["mul", "--t", &t.to_string(), "--p", &p.to_string(), "--q", &qq.to_string(), "--verbose"]);
        ensure(code == 0, || format!("mul f{p} f{qq} exited {code}: {err}"))?;
        let lines: Vec<&str> = out.lines().collect();
        ensure(lines.last() == Some(&product), || format!("f{p} f{qq}: got {:?}, want {product}", lines.last()))?;
        let (got, got_value) = parse_chain(lines[0]);
        let (want, want_value) = parse_chain(chain);
        ensure(got_value == want_value, || format!("theta{t}({p},{qq}) value {got_value} != {want_value}"))?;
        ensure(got.len() == want.len(), || format!("chain length for ({p},{qq}): {} vs {}", lines[0], chain))?;
        for (k, (g, w)) in got.iter().zip(&want).enumerate() {
            ensure((g.0, g.1) == (w.0, w.1), || format!("step {k} sign/level: {} vs {chain}", lines[0]))?;
            if (g.2, g.3) != (w.2, w.3) {
                // a written final step may carry arguments that the reduction
                // of the previous step cannot produce; the sign still has to agree
                let last = k + 1 == want.len();
                let prev = &want[k - 1];
                let reachable = reduces_to(prev.1, prev.2, prev.3, w.2, w.3);
                ensure(last && !reachable, || format!("step {k} arguments: {} vs {chain}", lines[0]))?;
                notes.push(format!("theta{t}({p},{qq}) final step theta{}({},{}) for written ({},{})", g.1, g.2, g.3, w.2, w.3));
            }
        }
    }
    let mut msg = "6 products and sign chains".to_string();
    if !notes.is_empty() {
        msg.push_str(&format!("; {}", notes.join("; ")));
    }
    Ok(msg)
}

/// Whether one reduction step at `level` takes `(p, q)` to `(a, b)`.
fn reduces_to(level: u32, p: u64, q: u64, a: u64, b: u64) -> bool {
    twist::theta_chain(level, p, q).is_ok_and(|c| c.steps.get(1).is_some_and(|s| (s.p, s.q) == (a, b)))
}

fn twist_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for t in 0..=5 {
        let r = verify_twist_vs_oracle(t, &Gammas::Symbolic, Mode::Exhaustive).map_err(|e| e.to_string())?;
        ensure(r.passed && r.multi_term.is_empty(), || format!("t={t}: {}", r.summary()))?;
        pairs += r.pairs_checked;
    }
    within("exhaustive t <= 5", start.elapsed(), EXHAUSTIVE_LIMIT)?;
    // single nonzero signed monomial per oracle basis product
    for t in 0..=5 {
        let alg = CdAlgebra::symbolic_tower(t).map_err(|e| e.to_string())?;
        for p in 0..alg.dim() {
            for qq in 0..alg.dim() {
                let prod = alg.mul(&alg.basis(p).unwrap(), &alg.basis(qq).unwrap()).map_err(|e| e.to_string())?;
                let term = prod.terms().next().map(|(_, c)| c.as_single_term().is_some());
                ensure(prod.len() == 1 && term == Some(true), || format!("t={t} f{p} f{qq} = {prod}"))?;
            }
        }
    }
    let start = Instant::now();
    let g: Vec<Rational> = vec![q(-1), Rational::new(1.into(), 2.into()), q(3), q(-2), Rational::new((-5).into(), 3.into()), q(1), q(-1), q(7)];
    let r = verify_twist_vs_oracle(8, &Gammas::Concrete(g), Mode::Random { n: 100_000, seed: 0 }).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(r.passed, || format!("t=8 random: {}", r.summary()))?;
    within("t=8 random", elapsed, RANDOM_LIMIT)?;
    Ok(format!("{pairs} exhaustive pairs, t=8 random {} in {elapsed:.2?}", r.summary()))
}

fn xor_identities() -> Outcome {
    let x = |a: u64, b: u64| {
        xor_index(BasisIndex::new(a, 32).unwrap(), BasisIndex::new(b, 32).unwrap()).unwrap().value()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let trials = 100_000;
    for _ in 0..trials {
        let (p, qq) = (rng.gen_range(0..1u64 << 29), rng.gen_range(0..1u64 << 29));
        let t = rng.gen_range(0..=30u32);
        let top = 1u64 << t;
        let (r, s) = (rng.gen_range(0..top), rng.gen_range(0..top));
        let checks = [
            x(2 * p, 2 * qq) == 2 * x(p, qq),
            x(2 * p, 2 * qq + 1) == 2 * x(p, qq) + 1,
            x(2 * p + 1, 2 * qq) == 2 * x(p, qq) + 1,
            x(2 * p + 1, 2 * qq + 1) == 2 * x(p, qq),
            x(r, top + s) == top + x(r, s),
            x(top + r, s) == top + x(r, s),
            x(top + r, top + s) == x(r, s),
        ];
        if let Some(k) = checks.iter().position(|ok| !ok) {
            return Err(format!("identity {} fails for p={p} q={qq} r={r} s={s} t={t}", k + 1));
        }
    }
    Ok(format!("7 identities x {trials} trials, seed 0"))
}

fn invariants<S: Scalar>(alg: &CdAlgebra<S>, x: &Element<S>, y: &Element<S>) -> Result<(), String> {
    let e = |r: cdtwist::Result<Element<S>>| r.map_err(|e| e.to_string());
    let s = |r: cdtwist::Result<S>| r.map_err(|e| e.to_string());
    ensure(e(alg.conj(&e(alg.mul(x, y))?))? == e(alg.mul(&e(alg.conj(y))?, &e(alg.conj(x))?))?, || format!("conj(xy) for {x}, {y}"))?;
    let (t, n) = (s(alg.trace(x))?, s(alg.norm(x))?);
    let quad = e(alg.mul(x, x))?.sub(&x.scale(&t)).add(&alg.scalar(n.clone()));
    ensure(quad.is_zero(), || format!("quadratic identity for {x}: {quad}"))?;
    if let Some(parent) = alg.parent() {
        let (a1, a2) = alg.halves(x).map_err(|e| e.to_string())?;
        let g = alg.gamma(alg.levels()).unwrap().as_scalar(S::zero_in(alg.field())).unwrap();
        let want = s(parent.norm(&a1))?.sub_ref(&g.mul_ref(&s(parent.norm(&a2))?));
        ensure(n == want, || format!("norm recursion for {x}"))?;
    }
    Ok(())
}

fn basis_invariants(t: u32) -> Result<(), String> {
    let n = 1u64 << t;
    for p in 1..n {
        let sq = twist::basis_product(t, p, p).map_err(|e| e.to_string())?;
        ensure(sq.index == 0 && sq.gamma_mask == p, || format!("f{p}^2 = {sq}"))?;
        for qq in 1..n {
            if p != qq {
                let (a, b) = (twist::basis_product_unchecked(t, p, qq), twist::basis_product_unchecked(t, qq, p));
                ensure(a.index == b.index && a.gamma_mask == b.gamma_mask && a.sign == -b.sign, || format!("f{p} f{qq} = {a}, f{qq} f{p} = {b}"))?;
            }
        }
    }
    Ok(())
}

fn algebraic_invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let samples = 1000;
    for t in 0..=4 {
        basis_invariants(t)?;
        let sym: CdAlgebra<SparsePoly> = CdAlgebra::symbolic_tower(t).map_err(|e| e.to_string())?;
        for _ in 0..samples {
            let (x, y) = (random_symbolic(&sym, &mut rng), random_symbolic(&sym, &mut rng));
            invariants(&sym, &x, &y).map_err(|m| format!("symbolic t={t}: {m}"))?;
        }
        let g = concrete_gammas(t, &mut rng);
        let alg = CdAlgebra::rational_tower(&g).map_err(|e| e.to_string())?;
        for _ in 0..samples {
            let (x, y) = (random_rational(&alg, &mut rng), random_rational(&alg, &mut rng));
            invariants(&alg, &x, &y).map_err(|m| format!("concrete t={t}: {m}"))?;
        }
    }
    Ok(format!("t = 0..4, {samples} symbolic and {samples} concrete samples each"))
}

fn composition_boundary() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for t in 0..=3 {
        let g = concrete_gammas(t, &mut rng);
        let alg = CdAlgebra::rational_tower(&g).map_err(|e| e.to_string())?;
        for _ in 0..1000 {
            let (x, y) = (random_rational(&alg, &mut rng), random_rational(&alg, &mut rng));
            let lhs = alg.norm(&alg.mul(&x, &y).unwrap()).unwrap();
            let rhs = alg.norm(&x).unwrap() * alg.norm(&y).unwrap();
            ensure(lhs == rhs, || format!("t={t}: n(xy) != n(x)n(y) for {x}, {y}"))?;
        }
    }
    let tower = |t: usize| CdAlgebra::rational_tower(&vec![q(-1); t]).unwrap();
    let start = Instant::now();
    let sed = tower(4);
    let found = find_zero_divisor(&sed, Family::Structured, None, 0).map_err(|e| e.to_string())?;
    within("sedenion search", start.elapsed(), ZERO_DIVISOR_LIMIT)?;
    let (x, y) = found.pair.ok_or("no zero divisor in the sedenions")?;
    ensure(!x.is_zero() && !y.is_zero() && sed.mul(&x, &y).unwrap().is_zero(), || "bad pair".into())?;
    let oct = find_zero_divisor(&tower(3), Family::Structured, None, 0).map_err(|e| e.to_string())?;
    ensure(oct.pair.is_none() && oct.exhausted, || "octonion search found a pair".into())?;
    Ok(format!("composition t <= 3; sedenions ({x})({y}) = 0; octonions none in {} products", oct.tried))
}

fn nonassoc_suite() -> Outcome {
    let start = Instant::now();
    let e = QuadField::new(2).map_err(|e| e.to_string())?;
    let h = NonAssocQuaternion::new(2, e.sqrt()).map_err(|e| e.to_string())?;
    let b = |i| h.basis(i).unwrap();
    let m = |x: &Element<QuadExt>, y: &Element<QuadExt>| h.mul(x, y).unwrap();
    let (i, j, k) = (b(1), b(2), b(3));
    let table = [
        ("i^2 = 2", m(&i, &i) == h.embed(e.from_ints(2, 0))),
        ("j^2 = sqrt(2)", m(&j, &j) == h.embed(e.sqrt())),
        ("k^2 = -2 sqrt(2)", m(&k, &k) == h.embed(e.from_ints(0, -2))),
        ("k = ij", m(&i, &j) == k),
        ("ik = 2j", m(&i, &k) == j.scale(&e.from_ints(2, 0))),
        ("jk = -i sqrt(2)", m(&j, &k) == m(&i, &h.embed(e.sqrt())).neg()),
    ];
    let mut failures = Vec::new();
    for (name, ok) in table {
        if !ok {
            failures.push(format!("table cell {name}"));
        }
    }
    let w = nonassoc::check_third_power_assoc(h.algebra(), &j).unwrap();
    if !(w.x_x2 == j.scale(&e.from_ints(0, -1)) && w.x2_x == j.scale(&e.sqrt()) && !w.equal) {
        failures.push(format!("j j^2 = {}, j^2 j = {}", h.display(&w.x_x2), h.display(&w.x2_x)));
    }
    let flex = nonassoc::check_flexible_basis_law(h.algebra()).unwrap();
    if !(flex.pairs_checked.len() == 6 && flex.holds()) {
        let detail: Vec<String> = flex
            .failures
            .iter()
            .map(|f| format!("f{}(f{}f{}) = {} vs {}", f.i, f.k, f.i, h.display(&f.left), h.display(&f.right)))
            .collect();
        failures.push(format!("law (F) on H: {}/6 pairs [{}]", flex.passed(), detail.join(", ")));
    }
    let octo = h.doubled(e.sqrt()).unwrap();
    let flex8 = nonassoc::check_flexible_basis_law(&octo).unwrap();
    if !(flex8.pairs_checked.len() == 42 && flex8.holds()) {
        let pairs: Vec<String> = flex8.failures.iter().map(|f| format!("({},{})", f.i, f.k)).collect();
        failures.push(format!("law (F) on the doubling: {}/42 pairs, failing {}", flex8.passed(), pairs.join(" ")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..200 {
        let x = nonassoc::random_nonzero(h.algebra(), &mut rng).unwrap();
        if !h.algebra().left_mult_invertible(&x).unwrap().1 {
            failures.push(format!("L_x singular for {x}"));
            break;
        }
    }
    within("nonassociative suite", start.elapsed(), NONASSOC_LIMIT)?;
    if failures.is_empty() {
        Ok("table, third powers, law (F) 6/6 and 42/42, 200 invertible L_x".into())
    } else {
        Err(failures.join("; "))
    }
}

/// Seconds per product at level `t`, best of several runs.
fn cost(t: u32, n: u64) -> f64 {
    (0..BENCH_REPEATS).map(|k| bench(t, n, k as u64).unwrap().seconds / n as f64).fold(f64::INFINITY, f64::min)
}

fn performance() -> Outcome {
    let n = 1_000_000;
    let run = bench(20, n, 0).map_err(|e| e.to_string())?;
    within("10^6 products at t=20", Duration::from_secs_f64(run.seconds), BENCH_LIMIT)?;
    let base = cost(5, n);
    let mut report = vec![format!("t=20: {:.3}s for 10^6", run.seconds)];
    for t in [10u32, 20, 40] {
        let c = cost(t, n);
        let ratio = c / base;
        report.push(format!("cost({t})/cost(5) = {ratio:.2}"));
        ensure(ratio <= SCALING_FACTOR * t as f64 / 5.0, || format!("cost grows faster than linear at t={t}: ratio {ratio:.2}"))?;
        if t == 20 {
            ensure(ratio <= SCALING_FACTOR, || format!("t=20 costs {ratio:.2}x t=5"))?;
        }
    }
    Ok(report.join(", "))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("golden tables", golden_tables),
        ("worked examples", worked_examples),
        ("twist/oracle equivalence", twist_oracle_equivalence),
        ("index identities", xor_identities),
        ("algebraic invariants", algebraic_invariants),
        ("composition boundary", composition_boundary),
        ("nonassociative quaternions", nonassoc_suite),
        ("performance", performance),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {} {name} ({elapsed:.2?}): {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name} ({elapsed:.2?}): {detail}", k + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 && std::env::var("CDTWIST_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
        std::process::exit(1);
    }
}

//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use z4oa::ring::{enumerate_codes, property_plus_violation};
use z4oa::verify::{exceeds_weak_bound, Theorem};
use z4oa::{
    annihilator, check_lee_macwilliams, check_property_star, columns_independent, enumerate_ideals,
    exhaustive_small_sweep, gray, gray_image, is_oa_at, krawtchouk, random_z4_code, random_z4_sweep, search_pairs,
    strength, verify_dual_size, verify_strength_bounds, Array, BigInt, FiniteRing, Ideal, OaCheck, RingCode,
    SearchConfig, SweepOutcome, Z4Code, Z4Word,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn lee_symbol(d: u8) -> usize {
    d.min(4 - d) as usize
}

fn gray_isometry() -> Check {
    let mut pairs = 0usize;
    for n in 1..=3 {
        let words: Vec<Z4Word> = (0..1u64 << (2 * n)).map(|x| Z4Word::unpack(x, n)).collect();
        for u in &words {
            for v in &words {
                let lee: usize = u.symbols().iter().zip(v.symbols()).map(|(&a, &b)| lee_symbol((a + 4 - b) % 4)).sum();
                let (gu, gv) = (gray(u), gray(v));
                let ham = gu.bits().iter().zip(gv.bits()).filter(|(a, b)| a != b).count();
                ensure(lee == ham, || format!("d_L({u},{v}) = {lee} but d_H = {ham}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs, no exceptions"))
}

fn failures_of(s: &SweepOutcome, theorem: Theorem) -> usize {
    s.failures.iter().filter(|r| r.theorem == theorem).count()
}

fn delsarte_sweep() -> Check {
    let z4 = exhaustive_small_sweep(&FiniteRing::zn(4).map_err(err)?, 3, Some(2)).map_err(err)?;
    let z6 = exhaustive_small_sweep(&FiniteRing::zn(6).map_err(err)?, 2, None).map_err(err)?;
    let r8 = exhaustive_small_sweep(&FiniteRing::r8(), 2, None).map_err(err)?;
    let mut codes = 0;
    for s in [&z4, &z6, &r8] {
        ensure(s.failures.is_empty(), || format!("{}: {:?}", s.label, s.failures[0]))?;
        ensure(s.counts.get("delsarte-ring") == Some(&s.codes_checked), || format!("{}: missing checks", s.label))?;
        codes += s.codes_checked;
    }
    ensure(r8.hypothesis_not_met == r8.codes_checked, || "R8 hypothesis flag missing".into())?;
    Ok(format!(
        "Z4 {} codes, Z6 {} codes, R8 {} codes ({codes} total), 0 failures",
        z4.codes_checked, z6.codes_checked, r8.codes_checked
    ))
}

fn z4_sweeps() -> Result<(SweepOutcome, SweepOutcome), String> {
    let exhaustive = exhaustive_small_sweep(&FiniteRing::zn(4).map_err(err)?, 3, Some(2)).map_err(err)?;
    let random = random_z4_sweep(200, 6, 2024).map_err(err)?;
    Ok((exhaustive, random))
}

fn gray_strength(sweeps: &(SweepOutcome, SweepOutcome)) -> Check {
    let mut checked = 0;
    for s in [&sweeps.0, &sweeps.1] {
        ensure(failures_of(s, Theorem::GrayStrength) == 0, || format!("{}: {:?}", s.label, s.failures))?;
        checked += s.counts.get("gray-strength").copied().unwrap_or(0);
    }
    ensure(checked == sweeps.0.codes_checked + 200, || format!("only {checked} instances checked"))?;
    Ok(format!("{checked} instances; direct strength, w_L(dual) - 1 and dual distance - 1 agree"))
}

fn strength_bounds(sweeps: &(SweepOutcome, SweepOutcome)) -> Check {
    for s in [&sweeps.0, &sweeps.1] {
        ensure(failures_of(s, Theorem::StrengthBounds) == 0, || format!("{}: {:?}", s.label, s.failures))?;
    }
    let full = verify_strength_bounds(&Z4Code::full(2).map_err(err)?).map_err(err)?;
    ensure((full.rhs, full.lhs) == (2, 4), || format!("full Z4^2 gave {full:?}"))?;
    ensure(exceeds_weak_bound(2, 4), || "full Z4^2 not flagged".into())?;
    let witness = sweeps
        .0
        .weak_bound_witness
        .as_ref()
        .or(sweeps.1.weak_bound_witness.as_ref())
        .ok_or("no sweep instance exceeds 2t - 1")?;
    Ok(format!(
        "bounds and chain hold; 2t - 1 exceeded by {} (t={}, t'={})",
        witness.instance, witness.rhs, witness.lhs
    ))
}

fn counterexample_ring() -> Check {
    let r8 = FiniteRing::r8();
    let ideals = enumerate_ideals(&r8).map_err(err)?;
    let self_ann: Vec<&Ideal> =
        ideals.iter().filter(|i| annihilator(&r8, i).map(|a| &a == *i).unwrap_or(false)).collect();
    ensure(self_ann.len() == 1, || format!("{} self-annihilating ideals", self_ann.len()))?;
    let ideal = self_ann[0];
    let mut labels = ideal.labels(&r8);
    labels.sort();
    ensure(labels == ["0", "2", "2+a", "a"], || format!("ideal {labels:?}"))?;
    ensure(ideal.size() == 4 && r8.order() / ideal.size() == 2, || "sizes".into())?;
    let gens: Vec<Vec<u8>> = ideal.members().into_iter().map(|m| vec![m]).collect();
    let code = RingCode::from_generators(&r8, 1, &gens).map_err(err)?;
    let dual = code.dual().map_err(err)?;
    ensure(code.size() == 4 && dual.size() == 4, || format!("|C| = {}, |dual| = {}", code.size(), dual.size()))?;
    ensure(r8.order() / code.size() == 2, || "|R|/|C|".into())?;
    let report = verify_dual_size(&code).map_err(err)?;
    ensure(report.verdict == z4oa::Verdict::HypothesisNotMet, || format!("{report:?}"))?;
    Ok("ann({0,2,a,a+2}) is itself (size 4, not 2); |C^perp| = 4, |R|/|C| = 2".into())
}

fn test_rings() -> Result<Vec<FiniteRing>, String> {
    let mut specs: Vec<String> = (2..=16).map(|n| format!("Z{n}")).collect();
    specs.extend(["Z2xZ3", "Z4xZ4", "R8"].map(String::from));
    specs.iter().map(|s| FiniteRing::parse(s).map_err(err)).collect()
}

fn random_matrix(rng: &mut ChaCha8Rng, ring: &FiniteRing, rows: usize, cols: usize) -> Vec<Vec<u8>> {
    (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(0..ring.order()) as u8).collect()).collect()
}

fn property_suite() -> Check {
    let rings = test_rings()?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut star = 0;
    for ring in &rings {
        ensure(property_plus_violation(ring).map_err(err)?.is_none(), || format!("(+) fails for {ring}"))?;
        let mut found = 0;
        let mut attempts = 0;
        while found < 100 {
            attempts += 1;
            ensure(attempts <= 100_000, || format!("{ring}: only {found} independent matrices"))?;
            let t = rng.gen_range(1..=3);
            let rows = rng.gen_range(t..=t + 2);
            let a = random_matrix(&mut rng, ring, rows, t);
            if !columns_independent(ring, &a).map_err(err)? {
                continue;
            }
            found += 1;
            ensure(check_property_star(ring, &a).map_err(err)?, || format!("(*) fails for {ring}: {a:?}"))?;
        }
        star += found;
    }

    let mut arrays = 0;
    while arrays < 120 {
        let ring = &rings[rng.gen_range(0..rings.len())];
        let n = rng.gen_range(1..=3);
        let rows = rng.gen_range(1..=2);
        let gens = random_matrix(&mut rng, ring, rows, n);
        let code = RingCode::from_generators(ring, n, &gens).map_err(err)?;
        let mut candidates = vec![code.to_array()];
        if arrays % 3 == 0 {
            let k1 = rng.gen_range(0..=n);
            let k2 = rng.gen_range(0..=n - k1);
            let z = random_z4_code(n, k1, k2, rng.gen()).map_err(err)?;
            candidates.push(gray_image(&z).to_array());
        }
        for a in candidates {
            monotone(&a)?;
            arrays += 1;
        }
    }

    for q in [2usize, 4] {
        for n in 0..=8 {
            for k in 0..=n {
                for l in 0..=n {
                    let mut sum = BigInt::from(0);
                    for x in 0..=n {
                        let w =
                            BigInt::from(num_integer::binomial(n as u64, x as u64)) * BigInt::from(q - 1).pow(x as u32);
                        sum += w
                            * krawtchouk::<BigInt>(k, x, n, q).map_err(err)?
                            * krawtchouk::<BigInt>(l, x, n, q).map_err(err)?;
                    }
                    let expected = if k == l {
                        BigInt::from(q).pow(n as u32)
                            * BigInt::from(num_integer::binomial(n as u64, k as u64))
                            * BigInt::from(q - 1).pow(k as u32)
                    } else {
                        BigInt::from(0)
                    };
                    ensure(sum == expected, || format!("orthogonality q={q} n={n} k={k} l={l}"))?;
                }
            }
        }
    }
    Ok(format!(
        "(+) on {} rings; (*) on {star} matrices; monotonicity on {arrays} arrays; Krawtchouk n<=8",
        rings.len()
    ))
}

fn monotone(a: &Array) -> Result<(), String> {
    let r = strength(a).map_err(err)?;
    for s in 0..=r.strength {
        let expected = a.alphabet().pow((r.strength - s) as u32) * r.index;
        match is_oa_at(a, s).map_err(err)? {
            OaCheck::Holds { index } if index == expected => {}
            other => return Err(format!("strength {} array: level {s} gave {other:?}, want {expected}", r.strength)),
        }
    }
    Ok(())
}

fn lee_macwilliams() -> Check {
    let z4 = FiniteRing::zn(4).map_err(err)?;
    let mut count = 0;
    for n in 1..=3 {
        for c in enumerate_codes(&z4, n, Some(2)).map_err(err)? {
            let code = Z4Code::from_ring_code(&c).map_err(err)?;
            let r = check_lee_macwilliams::<BigInt>(&code).map_err(err)?;
            ensure(r.holds, || format!("{:?}: {:?}", code.generators(), r.first_difference))?;
            count += 1;
        }
    }
    Ok(format!("{count} codes, exact coefficient equality"))
}

fn pair_search() -> Check {
    let table = search_pairs(&SearchConfig { n_max: 4, ..SearchConfig::default() }).map_err(err)?;
    for (t, tg) in [(0, 1), (1, 1), (2, 4)] {
        let e = table.entry(t, tg).ok_or(format!("({t},{tg}) missing from table"))?;
        ensure(e.found, || format!("({t},{tg}) not found"))?;
    }
    let bad = table.revalidate().map_err(err)?;
    ensure(bad.is_empty(), || format!("witnesses do not revalidate: {bad:?}"))?;
    ensure(table.out_of_bounds.is_empty(), || format!("out of bounds: {:?}", table.out_of_bounds))?;
    let found = table.found_pairs();
    ensure(found.iter().all(|&(t, tg)| t <= tg && tg <= 2 * t + 1), || "bound violated".into())?;
    Ok(format!(
        "{} codes examined; pairs found: {}",
        table.codes_examined,
        found.iter().map(|(t, tg)| format!("({t},{tg})")).join(" ")
    ))
}

fn run(id: usize, name: &str, limit: Duration, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let (ok, detail) = match result {
        Ok(d) if elapsed <= limit => (true, d),
        Ok(d) => (false, format!("{d}; took {elapsed:.2?}, limit {limit:?}")),
        Err(e) => (false, e),
    };
    println!("criterion {id} [{name}]: {} ({elapsed:.2?}) {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn main() -> ExitCode {
    let mut ok = true;
    ok &= run(1, "gray isometry", Duration::from_secs(1), gray_isometry);
    ok &= run(2, "strength vs dual hamming weight", Duration::from_secs(120), delsarte_sweep);
    let mut sweeps = None;
    ok &= run(3, "gray strength vs dual lee weight", Duration::from_secs(300), || {
        let s = z4_sweeps()?;
        let r = gray_strength(&s);
        sweeps = Some(s);
        r
    });
    ok &= run(4, "strength bounds", Duration::from_secs(300), || {
        strength_bounds(sweeps.as_ref().ok_or("sweeps for criterion 3 did not complete")?)
    });
    ok &= run(5, "counterexample ring", Duration::from_secs(1), counterexample_ring);
    ok &= run(6, "property suite", Duration::from_secs(600), property_suite);
    ok &= run(7, "lee macwilliams", Duration::from_secs(600), lee_macwilliams);
    ok &= run(8, "pair search", Duration::from_secs(600), pair_search);
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::process::ExitCode;
use std::time::Instant;

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zelkl_core::branching::{ext_dims, random_instance, run_random_suite, ExtMode, SuiteConfig};
use zelkl_core::coxeter::{enumerate_sn, enumerate_wtilde, longest_element, Permutation};
use zelkl_core::grothendieck::{
    decompose_irreducible, ep_pairing, verify_kl_identity, GrothendieckVector, RegularBlock,
};
use zelkl_core::klpoly::{store, IntPolynomial, KlCache, KlTable, RTable};
use zelkl_core::zelevinsky::{
    is_standard_sequence, parse_segment_list, standard_order, CuspidalLine, Multisegment, Segment, Side,
};
use zelkl_core::Limits;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn kl_identity(cache: &KlCache) -> Outcome {
    let mut notes = Vec::new();
    for n in 2..=5 {
        let start = Instant::now();
        let report = verify_kl_identity(n, cache).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        ensure(report.passed(), || format!("n={n}: failing w {:?}", report.failures))?;
        let zeros = report.records.iter().filter(|r| r.sum == 0).count();
        ensure(zeros == report.checked, || format!("n={n}: {zeros} zero sums"))?;
        if n == 5 {
            ensure(elapsed.as_secs() < 60, || format!("n=5 took {elapsed:?}"))?;
        }
        notes.push(format!("n={n}: {zeros} zero sums"));
    }
    Ok(notes.join(", "))
}

fn kl_oracle(cache: &KlCache) -> Outcome {
    let mut checked = 0;
    for n in 1..=4 {
        let kl = cache.table(n).map_err(|e| e.to_string())?;
        let r = RTable::build(n, &Limits::default()).map_err(|e| e.to_string())?;
        kl.check_invariants().map_err(|e| format!("n={n}: {e}"))?;
        let report = kl.verify_inversion(&r);
        ensure(report.passed(), || format!("n={n}: {:?}", report.failures))?;
        checked += report.checked;
    }
    let kl = cache.table(5).map_err(|e| e.to_string())?;
    kl.check_invariants().map_err(|e| format!("n=5: {e}"))?;
    let r = RTable::build(5, &Limits::default()).map_err(|e| e.to_string())?;
    let report = kl.verify_inversion_for(&r, &sample_pairs(kl.elements(), 1000, 2024)).map_err(|e| e.to_string())?;
    ensure(report.passed() && report.checked == 1000, || format!("n=5: {:?}", report.failures))?;
    Ok(format!("{checked} pairs for n<=4, 1000 sampled pairs at n=5"))
}

fn sample_pairs(elements: &[Permutation], count: usize, seed: u64) -> Vec<(Permutation, Permutation)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let x = elements[rng.gen_range(0..elements.len())].clone();
            let w = elements[rng.gen_range(0..elements.len())].clone();
            (x, w)
        })
        .collect()
}

fn s4_landmarks(cache: &KlCache) -> Outcome {
    let kl = cache.table(4).map_err(|e| e.to_string())?;
    let p = |s: &str| s.parse::<Permutation>().unwrap();
    let value = kl.get(&p("1324"), &p("3412")).map_err(|e| e.to_string())?;
    ensure(*value == IntPolynomial::from_i64s(&[1, 1]), || format!("P_1324,3412 = {value}"))?;
    let mut nonconstant: Vec<String> = kl
        .nonzero_entries()
        .filter(|(_, _, poly)| poly.degree().unwrap_or(0) > 0)
        .map(|(_, w, _)| w.to_string())
        .collect();
    nonconstant.dedup();
    ensure(nonconstant == ["3412", "4231"], || format!("nonconstant columns {nonconstant:?}"))?;
    Ok("P_{1324,3412} = 1+q; nonconstant entries only at w in {3412, 4231}".into())
}

fn cor_4_2(cache: &KlCache) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..200 {
        let (m, mp) = random_instance(&mut rng, &SuiteConfig::default());
        let pairing = ep_pairing(&GrothendieckVector::basis(m), &GrothendieckVector::basis(mp), true)
            .map_err(|e| e.to_string())?;
        ensure(pairing == 1, || format!("EP of standard modules = {pairing}"))?;
    }
    let mut total = 0;
    for n in 1..=5 {
        let block = RegularBlock::standard(n, &Limits::default()).map_err(|e| e.to_string())?;
        let w0 = longest_element(n);
        for w in enumerate_sn(n, &Limits::default()).map_err(|e| e.to_string())? {
            let v = decompose_irreducible(&block, &w, cache).map_err(|e| e.to_string())?;
            let wh = v.whittaker_dim().map_err(|e| e.to_string())?;
            let generic = block.member(&w).map_err(|e| e.to_string())?.is_generic();
            ensure((wh == 1) == generic && generic == (w == w0) && (wh == 0 || wh == 1), || {
                format!("n={n}, w={w}: whittaker {wh}, generic {generic}")
            })?;
            total += 1;
        }
    }
    Ok(format!("200 standard pairs give EP 1; {total} block elements agree"))
}

fn theorem_oracle() -> Outcome {
    let start = Instant::now();
    let report = run_random_suite(1000, 20240601, &SuiteConfig::default());
    let elapsed = start.elapsed();
    ensure(report.all_passed(), || {
        let first = &report.failures[0];
        format!("{} failing instances, first: {} / {}: {:?}", report.failures.len(), first.m, first.m_prime, first.problems)
    })?;
    ensure(report.induction_failures == 0, || "induction failure markers".into())?;
    ensure(elapsed.as_secs() < 30, || format!("suite took {elapsed:?}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    for _ in 0..100 {
        let (m, mp) = random_instance(&mut rng, &SuiteConfig::default());
        let p = ext_dims(&m, &mp, ExtMode::Branching).map_err(|e| e.to_string())?;
        ensure(p.hom_dim == Some(1) && p.ext_vanishing_degree == Some(1), || format!("{p:?}"))?;
    }
    Ok(format!(
        "1000 traces, max {} rounds, {} Case 1 and {} Case 2 rounds, {elapsed:.2?}",
        report.max_rounds, report.case1_rounds, report.case2_rounds
    ))
}

fn lstar_bookkeeping() -> Outcome {
    let report = run_random_suite(1000, 20240601, &SuiteConfig::default());
    ensure(report.all_passed(), || format!("{:?}", report.failures.first()))?;
    ensure(report.swap_checks > 0 && report.removal_checks > 0, || "suite exercised no swaps or removals".into())?;
    Ok(format!(
        "{} swaps preserve L*, {} removals drop it by the pair count, {} insertions keep it",
        report.swap_checks, report.removal_checks, report.insertion_checks
    ))
}

fn stratification() -> Outcome {
    let mut factorial = 1;
    for n in 1..=6 {
        factorial *= n;
        let strata = enumerate_wtilde(n, &Limits::default()).map_err(|e| e.to_string())?;
        ensure(strata.len() == n * factorial, || format!("n={n}: |W~| = {}", strata.len()))?;
        for d in &strata {
            ensure(d.last_image_is_not_one(), || format!("n={n}: {} ends in 1", d.element))?;
            ensure(d.cell_dim + d.y_pairs.len() == n * (n + 1) / 2, || format!("n={n}: {} dimension count", d.element))?;
            ensure(d.is_consistent(), || format!("n={n}: {} inconsistent", d.element))?;
        }
    }
    Ok("|W~| = n*n! and w(n+1) != 1 for n <= 6".into())
}

fn segment_calculus() -> Outcome {
    let lines = [
        CuspidalLine::self_dual("rho", 1).unwrap(),
        CuspidalLine::with_dual("pi", "pic", 1).unwrap(),
        CuspidalLine::with_dual("pic", "pi", 1).unwrap(),
        CuspidalLine::self_dual("tau", 2).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let random_segment = |rng: &mut ChaCha8Rng| {
        let a = Rational64::new(rng.gen_range(-10..=10), 2);
        Segment::new(lines[rng.gen_range(0..lines.len())].clone(), a, a + rng.gen_range(0..4)).unwrap()
    };
    for _ in 0..2000 {
        let list: Vec<Segment> = (0..rng.gen_range(0..6)).map(|_| random_segment(&mut rng)).collect();
        let m = Multisegment::new(list.clone());
        ensure(m.dual().dual() == m, || format!("dual not involutive on {m}"))?;
        let c = Rational64::new(rng.gen_range(-6..=6), rng.gen_range(1..=3));
        ensure(m.twist(c).csupp() == m.csupp().twist(c), || format!("twist/csupp on {m}"))?;
        ensure(m.twist(c).absolute_length() == m.absolute_length(), || format!("twist length on {m}"))?;
        let once = standard_order(&list);
        ensure(standard_order(once.segments()) == once, || format!("standard_order on {m}"))?;
        ensure(is_standard_sequence(once.segments()), || format!("{m} not standard"))?;
        for s in &list {
            let len = s.relative_length();
            for i in 0..=len {
                for side in [Side::Left, Side::Right] {
                    let d = s.derivative(side, i, false).map_err(|e| e.to_string())?;
                    let got = d.map_or(0, |d| d.relative_length());
                    ensure(got == len - i, || format!("{s}: {side:?} derivative {i} has length {got}"))?;
                }
            }
        }
    }
    let intro = parse_segment_list("{[-1/2,-1/2]@rho, [1/2,1/2]@rho}").map_err(|e| e.to_string())?;
    ensure(!is_standard_sequence(&intro), || "non-standard product not flagged".into())?;
    ensure(is_standard_sequence(standard_order(&intro).segments()), || "normalized order not standard".into())?;
    Ok("2000 random multisegments; non-standard order {[-1/2],[1/2]} flagged".into())
}

fn persistence(cache: &KlCache) -> Outcome {
    let table = cache.table(5).map_err(|e| e.to_string())?;
    let dir = std::env::temp_dir().join(format!("zelkl-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let path = dir.join(store::cache_file_name(5));
    store::save(&table, &path).map_err(|e| e.to_string())?;
    let written = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    let loaded: KlTable = store::load(&path, &Limits::default()).map_err(|e| e.to_string())?;
    let _ = std::fs::remove_dir_all(&dir);
    ensure(loaded.is_complete(), || "reloaded table is incomplete".into())?;
    ensure(store::to_records(&loaded) == written, || "records differ after reload".into())?;
    let r = RTable::build(5, &Limits::default()).map_err(|e| e.to_string())?;
    let report = loaded.verify_inversion(&r);
    ensure(report.passed(), || format!("reloaded table fails the oracle: {:?}", report.failures))?;
    Ok(format!("{} bytes reloaded bit-exactly; {} pairs re-verified", written.len(), report.checked))
}

fn main() -> ExitCode {
    let cache = KlCache::default();
    let criteria: Vec<Criterion<'_>> = vec![
        ("KL alternating-sum identity, n = 2..5", Box::new(|| kl_identity(&cache))),
        ("KL inversion-identity oracle", Box::new(|| kl_oracle(&cache))),
        ("S_4 landmark values", Box::new(|| s4_landmarks(&cache))),
        ("EP pairing and Whittaker dimension of block irreducibles", Box::new(|| cor_4_2(&cache))),
        ("Ext oracle and terminating proof traces", Box::new(theorem_oracle)),
        ("L* bookkeeping under swaps and removals", Box::new(lstar_bookkeeping)),
        ("stratification of W~", Box::new(stratification)),
        ("segment-calculus properties", Box::new(segment_calculus)),
        ("KL cache persistence round trip", Box::new(|| persistence(&cache))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail} [{:.2?}]", i + 1, start.elapsed()),
            Err(reason) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {reason} [{:.2?}]", i + 1, start.elapsed());
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

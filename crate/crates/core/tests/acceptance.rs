//! One pass/fail line per acceptance criterion.
//!
//! Runs without the libtest harness so the report prints as-is. The process
//! fails on any FAIL line except those listed in `EXPECTED_FAILURES`, which
//! still print FAIL; an expected failure that starts passing is an error too.

use std::time::Instant;

use frobex::covers::KummerCover;
use frobex::divisor::{rational, Place, QDivisor};
use frobex::dvrext::TameExtension;
use frobex::field::Field;
use frobex::fields::{frobenius_power, pth_root, FieldDesc, FieldElement, FieldSpec};
use frobex::pmaps::{Elem, PeMap, RingModel};
use frobex::sweep::{enumerate, par_map, sample};
use frobex::wildcase::WildCase;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criterion 5 compares against the printed Table 1, whose fifth row reads
/// `y*phi(x^{1/3} y^{1/3})` where the expansion of `x^4 z^2 = x^2 (z^3 - y^2)^2`
/// gives `y*phi(x^{2/3} y^{1/3})`.
const EXPECTED_FAILURES: &[u32] = &[5];

const POOL7: [&str; 7] = ["0", "1", "2", "y", "y^2", "y^3", "y^4"];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

struct CoverRun {
    psi: PeMap<FieldDesc>,
    bar: Option<PeMap<FieldDesc>>,
}

fn pool(ring: &RingModel<FieldDesc>, src: &[&str]) -> Vec<Elem<FieldDesc>> {
    src.iter().map(|s| ring.parse_member(s).unwrap()).collect()
}

fn maps(ring: &RingModel<FieldDesc>, e: u32, pool: &[Elem<FieldDesc>], picks: &[Vec<usize>]) -> Vec<PeMap<FieldDesc>> {
    picks
        .iter()
        .map(|p| ring.map(e, p.iter().map(|&i| pool[i].clone()).collect()).unwrap())
        .collect()
}

/// `y` divides `f`, read off the constant coefficient.
fn y_divides(ring: &RingModel<FieldDesc>, f: &Elem<FieldDesc>) -> bool {
    let kt = ring.frac();
    kt.is_zero(f) || kt.ord_zero(f).unwrap() >= 1
}

fn criterion_1(runs: &mut Vec<CoverRun>) -> Outcome {
    let start = Instant::now();
    let k = FieldDesc::finite_prime(3).unwrap();
    let cover = KummerCover::new(&k, 4, "y", "x").unwrap();
    let ring = cover.base();
    let pool = pool(ring, &POOL7);
    let all = maps(ring, 1, &pool, &enumerate(7, 3));
    let reports = par_map(&all, 0, |psi| {
        let ext = cover.global_extend(psi).unwrap();
        let (report, _) = cover.check_main_theorem(psi).unwrap();
        (ext, report)
    })
    .unwrap();
    let mut bad = 0;
    let mut extends = 0;
    for (psi, (ext, report)) in all.iter().zip(reports) {
        let oracle = y_divides(ring, &psi.images()[1]) && y_divides(ring, &psi.images()[2]);
        extends += ext.extends() as usize;
        if ext.extends() != oracle || report.criterion_extends != oracle || !report.consistent {
            bad += 1;
        }
        runs.push(CoverRun {
            psi: psi.clone(),
            bar: ext.map().cloned(),
        });
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        all.len() == 343 && bad == 0 && secs < 10.0,
        format!("{} maps, {extends} extend, {bad} discrepancies, {secs:.2}s", all.len()),
    )
}

fn criterion_2() -> Outcome {
    let cases = [(3, 2), (3, 4), (5, 2), (5, 3), (5, 4), (7, 2), (7, 3)];
    let mut bad = Vec::new();
    for (p, n) in cases {
        let k = FieldDesc::finite_prime(p).unwrap();
        let ext = TameExtension::new(&k, None, "w", n, "1", "r", "s").unwrap();
        let (e, _) = ext.minimal_e();
        let q = (p as u64).pow(e);
        // smallest e with n | p^e - 1
        let oracle_e = (1..).find(|&e| (p as u64).pow(e) % n as u64 == 1).unwrap();
        let phi = ext.lifted_generator(e).unwrap();
        let ok = (|| {
            let bar = ext.extend_map(&phi).ok()?.map()?.clone();
            if !bar.is_generator().ok()? {
                return None;
            }
            let pulled = ext.pullback(&phi.delta().ok()?).ok()?;
            // n * ord_r(c) / (q - 1) at the one place (s), against n - 1
            let c = phi.canonical_cofactor().ok()?;
            let ord = ext.base().frac().ord_zero(&c)?;
            let by_hand = BigRational::new((n as i64 * ord).into(), (q as i64 - 1).into());
            let ram = ext.ramification_divisor();
            let expected = rational(n as i64 - 1, 1);
            Some(
                pulled == ram
                    && pulled.coeff(&Place::Local) == expected
                    && by_hand == expected
                    && pulled.terms().count() == 1,
            )
        })();
        if e != oracle_e || ok != Some(true) {
            bad.push(format!("({p},{n})"));
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} (p,n) pairs, failing: {:?}", cases.len(), bad),
    )
}

fn check_divisor_formula(cover: &KummerCover, run: &CoverRun) -> Option<bool> {
    let bar = run.bar.as_ref()?;
    if run.psi.is_zero() {
        return Some(bar.is_zero());
    }
    let expected = cover
        .pullback(&run.psi.delta().unwrap())
        .unwrap()
        .sub(&cover.ramification_divisor())
        .unwrap();
    Some(bar.delta().unwrap() == expected)
}

fn criterion_3(runs: &mut Vec<CoverRun>) -> Outcome {
    let k = FieldDesc::finite_prime(3).unwrap();
    let cover = KummerCover::new(&k, 4, "y", "x").unwrap();
    let ring = cover.base();
    let pool = pool(ring, &POOL7);
    let random = maps(ring, 2, &pool, &sample(7, 9, 500, 3));
    let bars = par_map(&random, 0, |psi| cover.global_extend(psi).unwrap().map().cloned()).unwrap();
    for (psi, bar) in random.into_iter().zip(bars) {
        runs.push(CoverRun { psi, bar });
    }
    let checks = par_map(runs, 0, |r| check_divisor_formula(&cover, r)).unwrap();
    let tested = checks.iter().flatten().count();
    let bad = checks.iter().filter(|c| **c == Some(false)).count();
    outcome(
        bad == 0 && tested > 0,
        format!("{} maps, {tested} extend, {bad} mismatches", runs.len()),
    )
}

fn criterion_4() -> Outcome {
    let k = FieldDesc::finite_prime(3).unwrap();
    let cover = KummerCover::new(&k, 4, "y", "x").unwrap();
    let ring = cover.base();
    let pool = pool(ring, &POOL7);
    let picks: Vec<_> = sample(7, 3, 200, 4)
        .into_iter()
        .filter(|p| p.iter().any(|&i| i != 0))
        .take(100)
        .collect();
    let all = maps(ring, 1, &pool, &picks);
    let results = par_map(&all, 0, |psi| {
        let it = psi.iterate(2).unwrap();
        let same_ext = cover.global_extend(psi).unwrap().extends()
            == cover.global_extend(&it).unwrap().extends();
        let same_delta = it.delta().unwrap() == psi.delta().unwrap();
        (same_ext, same_delta)
    })
    .unwrap();
    let ext_bad = results.iter().filter(|r| !r.0).count();
    let delta_bad = results.iter().filter(|r| !r.1).count();
    outcome(
        all.len() == 100 && ext_bad == 0 && delta_bad == 0,
        format!("{} maps, {ext_bad} extension mismatches, {delta_bad} delta mismatches", all.len()),
    )
}

fn criterion_5() -> Outcome {
    let w = WildCase::new().unwrap();
    let rp = w.base();
    let pool = pool(rp, &["0", "1", "x", "y", "x*y"]);
    let mut picks = sample(5, 9, 1000, 5);
    for idx in 0..9 {
        let mut p = vec![0; 9];
        p[idx] = 1;
        picks.push(p);
    }
    picks.retain(|p| p.iter().any(|&i| i != 0));
    let all = maps(rp, 1, &pool, &picks);
    let results = par_map(&all, 0, |phi| {
        let ours = w.table1_formulae(phi).unwrap();
        let printed = w.printed_table1(phi).unwrap();
        let rows: Vec<bool> = ours.iter().zip(&printed).map(|(a, b)| a == b).collect();
        let v = w.wild_verdict(phi).unwrap();
        let delta = w.wild_delta_criterion(phi).unwrap();
        // the condition read with 1 <= i, j <= 2 only
        let four = (1..3).all(|i| (1..3).all(|j| y_divides_x(&w, &phi.images()[3 * i + j])));
        (rows, v.extends, v.table_integral, delta, four)
    })
    .unwrap();
    let mut row_bad = [0usize; 6];
    let mut crit_bad = 0;
    let mut four_bad = 0;
    for (rows, ext, integral, delta, four) in &results {
        for (r, ok) in rows.iter().enumerate() {
            row_bad[r] += !ok as usize;
        }
        crit_bad += (ext != delta || ext != integral) as usize;
        four_bad += (four != delta) as usize;
    }
    let rows_ok = row_bad.iter().all(|&b| b == 0);
    outcome(
        rows_ok && crit_bad == 0,
        format!(
            "{} maps; printed-row mismatches per row {:?}; extends vs delta vs integrality: {crit_bad} discrepancies; \
             (four-index reading of the condition disagrees with delta on {four_bad})",
            all.len(),
            row_bad
        ),
    )
}

fn y_divides_x(w: &WildCase, f: &Elem<FieldDesc>) -> bool {
    let kt = w.base().frac();
    kt.is_zero(f) || kt.ord_zero(f).unwrap() >= 1
}

fn criterion_6(runs: &[CoverRun]) -> Outcome {
    let mut tested = 0;
    let mut bad = 0;
    for r in runs {
        if let Some(bar) = &r.bar {
            tested += 1;
            // splitting: the image of 1 (basis index 0) is 1
            let one = |m: &PeMap<FieldDesc>| m.ring().frac().is_one(&m.images()[0]);
            if r.psi.is_splitting() != bar.is_splitting() || one(&r.psi) != one(bar) {
                bad += 1;
            }
        }
    }
    outcome(
        bad == 0 && tested > 0,
        format!("{tested} extending maps, {bad} mismatches"),
    )
}

fn random_element(k: &FieldDesc, rng: &mut ChaCha8Rng) -> FieldElement {
    let p = k.p();
    match k.transcendental() {
        None => {
            let size = (p as u64).pow(k.to_spec().k_deg);
            k.from_gf(rng.gen_range(0..size) as u32)
        }
        Some(y) => {
            let mut poly = |deg: usize| {
                (0..=deg).fold(k.zero(), |acc, _| {
                    k.add(&k.mul(&acc, &y), &k.from_i64(rng.gen_range(0..p) as i64))
                })
            };
            let num = poly(4);
            let mut den = poly(3);
            if k.is_zero(&den) {
                den = k.one();
            }
            k.div(&num, &den).unwrap()
        }
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut notes = Vec::new();

    // pth_root / frobenius round trips, 200 elements per field and level
    let f9: FieldSpec = serde_json::from_str(r#"{"p":3,"k_deg":2,"modulus":[1,0,1]}"#).unwrap();
    let fields = [
        FieldDesc::finite_prime(3).unwrap(),
        FieldDesc::finite_prime(5).unwrap(),
        FieldDesc::from_spec(&f9).unwrap(),
        FieldDesc::rational_prime(3, "y").unwrap(),
    ];
    let mut root_bad = 0;
    for k in &fields {
        for e in 1..=2 {
            for _ in 0..200 {
                let a = random_element(k, &mut rng);
                let up = frobenius_power(k, &a, e);
                let back = pth_root(k, &up, e);
                let mut expected = vec![k.zero(); back.coords.len()];
                expected[0] = a.clone();
                // a^{p^e} by repeated multiplication
                let mut naive = k.one();
                for _ in 0..(k.p() as u64).pow(e) {
                    naive = k.mul(&naive, &a);
                }
                if back.coords != expected || pth_root(k, &a, e).radicand(k) != a || naive != up {
                    root_bad += 1;
                }
            }
        }
    }
    notes.push(format!("roots {root_bad} bad"));

    // adapted basis determinants are units of S
    let mut det_bad = 0;
    let mut det_count = 0;
    for (p, n, u) in [(3, 2, "1"), (3, 4, "1"), (5, 3, "1"), (7, 3, "1"), (3, 2, "1+s"), (5, 2, "2+s^2")] {
        let k = FieldDesc::finite_prime(p).unwrap();
        let ext = TameExtension::new(&k, None, "w", n, u, "r", "s").unwrap();
        let e0 = ext.minimal_e().0;
        for e in [e0, 2 * e0] {
            if (p as u64).pow(e) > 125 {
                continue;
            }
            det_count += 1;
            let det = ext.new_basis_determinant(e).unwrap();
            if !ext.cover().is_unit(&det) {
                det_bad += 1;
            }
        }
    }
    notes.push(format!("determinants {det_bad}/{det_count} bad"));

    // divisor additivity over F_3[y], 200 random pairs, with a degree oracle
    let k = FieldDesc::finite_prime(3).unwrap();
    let ring = RingModel::poly(&k, "y");
    let kt = ring.frac();
    let mut div_bad = 0;
    for _ in 0..200 {
        let mut rand_poly = || loop {
            let deg = rng.gen_range(0..7);
            let coeffs: Vec<_> = (0..=deg).map(|_| k.from_i64(rng.gen_range(0..3))).collect();
            let f = kt.from_poly(kt.ring.trim(coeffs));
            if !kt.is_zero(&f) {
                return f;
            }
        };
        let (f, g) = (rand_poly(), rand_poly());
        let df = ring.divisor_of(&f).unwrap();
        let dg = ring.divisor_of(&g).unwrap();
        let dfg = ring.divisor_of(&kt.mul(&f, &g)).unwrap();
        let weighted = |d: &QDivisor<FieldElement>| {
            d.terms().fold(rational(0, 1), |acc, (pl, c)| match pl {
                Place::Poly(g) => acc + c * rational(g.len() as i64 - 1, 1),
                Place::Local => acc,
            })
        };
        let deg = |f: &Elem<FieldDesc>| rational(f.num.len() as i64 - 1, 1);
        if dfg != df.add(&dg).unwrap() || weighted(&df) != deg(&f) || weighted(&dfg) != deg(&f) + deg(&g) {
            div_bad += 1;
        }
    }
    notes.push(format!("divisors {div_bad} bad"));

    // cofactor round trips: every nonzero triple over {0,1,2,y,y^2} at e = 1
    let pool5 = pool(&ring, &["0", "1", "2", "y", "y^2"]);
    let gen = ring.generator_map(1);
    let mut cof_bad = 0;
    let mut cof_count = 0;
    let mut picks = enumerate(5, 3);
    picks.retain(|p| p.iter().any(|&i| i != 0));
    let mut level2 = sample(5, 9, 100, 8);
    level2.retain(|p| p.iter().any(|&i| i != 0));
    let gen2 = ring.generator_map(2);
    for (e, g, picks) in [(1, &gen, &picks), (2, &gen2, &level2)] {
        for psi in maps(&ring, e, &pool5, picks) {
            cof_count += 1;
            let c = psi.cofactor(g).unwrap();
            if g.twist(&c).unwrap() != psi {
                cof_bad += 1;
            }
        }
    }
    notes.push(format!("cofactors {cof_bad}/{cof_count} bad"));

    outcome(
        root_bad + det_bad + div_bad + cof_bad == 0,
        notes.join(", "),
    )
}

fn main() {
    let mut runs = Vec::new();
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "Kummer example, exhaustive e=1", criterion_1(&mut runs)),
        (2, "lifted generator identity", criterion_2()),
        (3, "divisor formula", criterion_3(&mut runs)),
        (4, "iterate coherence", criterion_4()),
        (5, "wild case table and criterion", criterion_5()),
        (6, "splitting transfer", criterion_6(&runs)),
        (7, "algebraic bedrock", criterion_7()),
    ];
    let mut unexpected = 0;
    for (id, name, o) in &results {
        let status = if o.pass { "PASS" } else { "FAIL" };
        let known = EXPECTED_FAILURES.contains(id);
        let tag = match (o.pass, known) {
            (false, true) => " [expected]",
            (true, true) => " [expected to fail, now passes]",
            _ => "",
        };
        println!("criterion {id} {status}{tag}: {name}: {}", o.detail);
        if o.pass == known {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria differ from the recorded outcome");
        std::process::exit(1);
    }
}

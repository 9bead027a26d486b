//! One line per acceptance criterion. Run with
//! `cargo test -p freecon --test acceptance`.

mod common;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use freecon::amalgam::{AmalgamGroup, Side};
use freecon::factors::{FactorElement, SubgroupKind};
use freecon::genericity::{enumerate_ball, fs_type_census, generosity_escapee, to_json, verify_lemma1, BALL_CAP};
use freecon::hnn::HnnLetter;
use freecon::witness::{Exponents, Schedule};
use freecon::{Error, FreeConstruction};

use common::{amalgam, hnn};

const SEED: u64 = 0x5eed_f00d;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn run(id: usize, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = f();
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let pass = o.pass && in_time;
    println!(
        "criterion {id:>2} {name:<34} {}  {}; {:.2} s (limit {} s){}",
        if pass { "PASS" } else { "FAIL" },
        o.detail,
        elapsed.as_secs_f64(),
        limit.as_secs(),
        if in_time { "" } else { ", over time" },
    );
    pass
}

// ---------------------------------------------------------------- helpers

fn factor_elements(p: &AmalgamGroup, side: Side) -> Vec<FactorElement> {
    p.factor(side).elements().expect("finite factor")
}

fn identified_pairs(p: &AmalgamGroup) -> Vec<(FactorElement, FactorElement)> {
    match (p.subgroup(Side::G).kind(), p.subgroup(Side::H).kind()) {
        (SubgroupKind::Finite(a), SubgroupKind::Finite(b)) => a.iter().cloned().zip(b.iter().cloned()).collect(),
        _ => vec![(p.factor(Side::G).identity(), p.factor(Side::H).identity())],
    }
}

fn order(p: &AmalgamGroup, side: Side, x: &FactorElement) -> i64 {
    let f = p.factor(side);
    (1..).find(|&k| f.is_identity(&f.pow(x, k))).unwrap()
}

/// Hyperbolic elements are exactly those whose square is longer.
fn grows<C: FreeConstruction>(group: &C, y: &C::Word) -> bool {
    group.length(&group.power(y, 2)) > group.length(y)
}

fn brute_root_counts<C: FreeConstruction>(group: &C, radius: usize, d: u32) -> HashMap<C::Word, usize> {
    let (ball, _) = group.ball(radius, BALL_CAP).unwrap();
    let mut counts = HashMap::new();
    for y in &ball {
        *counts.entry(group.power(y, d as i64)).or_insert(0) += 1;
    }
    counts
}

// ---------------------------------------------------------------- criteria

fn normal_form_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checks = 0usize;
    let mut failures = 0usize;
    for name in ["z2_z3", "s3_c2_s3"] {
        let p = amalgam(name);
        let elems = [factor_elements(&p, Side::G), factor_elements(&p, Side::H)];
        let pairs = identified_pairs(&p);
        for _ in 0..10_000 {
            let len = rng.gen_range(0..=12);
            let u: Vec<(Side, FactorElement)> = (0..len)
                .map(|_| {
                    let side = if rng.gen() { Side::G } else { Side::H };
                    let pool = &elems[(side == Side::H) as usize];
                    (side, pool[rng.gen_range(0..pool.len())].clone())
                })
                .collect();
            let base = p.reduce(&u).unwrap();
            let at = rng.gen_range(0..=u.len());
            let splice = |ins: &[(Side, FactorElement)]| {
                let mut w = u[..at].to_vec();
                w.extend_from_slice(ins);
                w.extend_from_slice(&u[at..]);
                p.reduce(&w).unwrap()
            };
            let (ag, ah) = &pairs[rng.gen_range(0..pairs.len())];
            let side = if rng.gen() { Side::G } else { Side::H };
            let pool = &elems[(side == Side::H) as usize];
            let x = pool[rng.gen_range(0..pool.len())].clone();
            let f = p.factor(side);
            let swapped = splice(&[(Side::G, ag.clone())]) == splice(&[(Side::H, ah.clone())]);
            let cancel = splice(&[(side, x.clone()), (side, f.inv(&x))]) == base;
            let power = splice(&vec![(side, x.clone()); order(&p, side, &x) as usize]) == base;
            let quotient = splice(&[(Side::G, ag.clone()), (Side::H, p.factor(Side::H).inv(ah))]) == base;
            for ok in [swapped, cancel, power, quotient] {
                checks += 1;
                failures += !ok as usize;
            }
        }
    }
    let g = hnn("bs23");
    let z = |k: i64| HnnLetter::G(FactorElement::Vector(vec![k]));
    for _ in 0..10_000 {
        let len = rng.gen_range(0..=12);
        let u: Vec<HnnLetter> = (0..len)
            .map(|_| {
                if rng.gen_bool(0.4) {
                    HnnLetter::T(if rng.gen() { 1 } else { -1 })
                } else {
                    z(rng.gen_range(-9..=9))
                }
            })
            .collect();
        let base = g.reduce(&u).unwrap();
        let at = rng.gen_range(0..=u.len());
        let splice = |ins: &[HnnLetter]| {
            let mut w = u[..at].to_vec();
            w.extend_from_slice(ins);
            w.extend_from_slice(&u[at..]);
            g.reduce(&w).unwrap()
        };
        let j = rng.gen_range(-4..=4);
        let a = FactorElement::Vector(vec![2 * j]);
        let b = g.phi(&a).unwrap();
        let conj = splice(&[HnnLetter::T(-1), HnnLetter::G(a), HnnLetter::T(1)]) == splice(&[HnnLetter::G(b)]);
        let k = rng.gen_range(-9..=9);
        let cancel = splice(&[z(k), z(-k)]) == base && splice(&[HnnLetter::T(1), HnnLetter::T(-1)]) == base;
        for ok in [conj, cancel] {
            checks += 1;
            failures += !ok as usize;
        }
    }
    outcome(
        failures == 0,
        format!("{failures} failures in {checks} relation insertions"),
    )
}

fn britton() -> Outcome {
    let g = hnn("bs23");
    let window: Vec<i64> = (-9..=9).collect();
    let in_a = |k: i64| k % 2 == 0;
    let in_b = |k: i64| k % 3 == 0;
    let mut checked = 0usize;
    let mut failures = 0usize;
    for t_len in 1..=3usize {
        for signs in 0..(1u32 << t_len) {
            let exps: Vec<i32> = (0..t_len).map(|i| if signs >> i & 1 == 1 { 1 } else { -1 }).collect();
            let mut idx = vec![0usize; t_len + 1];
            'outer: loop {
                let gs: Vec<i64> = idx.iter().map(|&i| window[i]).collect();
                let pinched = (1..t_len).any(|i| {
                    (exps[i - 1] == -1 && exps[i] == 1 && in_a(gs[i]))
                        || (exps[i - 1] == 1 && exps[i] == -1 && in_b(gs[i]))
                });
                if !pinched {
                    let mut raw = vec![HnnLetter::G(FactorElement::Vector(vec![gs[0]]))];
                    for i in 0..t_len {
                        raw.push(HnnLetter::T(exps[i]));
                        raw.push(HnnLetter::G(FactorElement::Vector(vec![gs[i + 1]])));
                    }
                    let w = g.reduce(&raw).unwrap();
                    checked += 1;
                    if g.is_identity(&w)
                        || w.t_length() != t_len
                        || w.exponents() != exps.iter().map(|&e| e as i8).collect::<Vec<_>>()
                    {
                        failures += 1;
                    }
                }
                for i in idx.iter_mut() {
                    *i += 1;
                    if *i < window.len() {
                        continue 'outer;
                    }
                    *i = 0;
                }
                break;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut inverse_failures = 0usize;
    for _ in 0..10_000 {
        let len = rng.gen_range(0..=16);
        let w: Vec<HnnLetter> = (0..len)
            .map(|_| {
                if rng.gen() {
                    HnnLetter::T(if rng.gen() { 1 } else { -1 })
                } else {
                    HnnLetter::G(FactorElement::Vector(vec![rng.gen_range(-9..=9)]))
                }
            })
            .collect();
        let mut ww = w.clone();
        ww.extend(w.iter().rev().map(|l| match l {
            HnnLetter::G(FactorElement::Vector(v)) => HnnLetter::G(FactorElement::Vector(vec![-v[0]])),
            HnnLetter::T(k) => HnnLetter::T(-k),
            other => other.clone(),
        }));
        if !g.is_identity(&g.reduce(&ww).unwrap()) {
            inverse_failures += 1;
        }
    }
    outcome(
        failures == 0 && inverse_failures == 0,
        format!("{failures} collapses in {checked} reduced words, {inverse_failures} w*w^-1 failures in 10000"),
    )
}

fn recheck<C: FreeConstruction>(group: &C, n: usize, window: u32, alpha: &C::Word) -> usize {
    let ball = enumerate_ball(group, n, window, BALL_CAP).unwrap();
    ball.elements
        .iter()
        .filter(|x| !grows(group, &group.mul(x, alpha)))
        .count()
}

fn witness_fixed() -> Outcome {
    let p = amalgam("z2_z3");
    let mut notes = Vec::new();
    let mut pass = true;
    for n in 0..=2u32 {
        let start = Instant::now();
        let e = Exponents::classical(n);
        let r = verify_lemma1(&p, "z2_z3", p.window(), 2, n, Schedule::Fixed(e)).unwrap();
        let alpha = p.witness_with(e).unwrap();
        let stalled = recheck(&p, n as usize, p.window(), &alpha);
        let ok = r.pass
            && r.exact
            && e == Exponents {
                alpha: n as u64 + 4,
                beta: 3 * n as u64 + 3,
            }
            && stalled == 0;
        let secs = start.elapsed().as_secs_f64();
        pass &= ok && secs < 60.0;
        notes.push(format!(
            "n={n}: {}/{} ({secs:.2} s)",
            r.verdicts.iter().filter(|v| v.pass()).count(),
            r.ball_size
        ));
    }
    outcome(pass, notes.join(", "))
}

fn witness_escalating<C: FreeConstruction>(group: &C, id: &str, window: u32, ds: &[u32], ns: &[u32]) -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for &d in ds {
        for &n in ns {
            let r = verify_lemma1(group, id, window, d, n, Schedule::Escalating).unwrap();
            let (alpha, _) = group.witness(d, n, r.escalations).unwrap();
            let stalled = recheck(group, n as usize, window, &alpha);
            pass &= r.pass && r.escalations <= 6 && stalled == 0;
            notes.push(format!(
                "d={d} n={n}: {} esc{}",
                r.escalations,
                if r.exact { "" } else { " (windowed)" }
            ));
        }
    }
    outcome(pass, notes.join(", "))
}

fn census_matches_brute<C: FreeConstruction>(
    group: &C,
    id: &str,
    window: u32,
    d: u32,
    radius: usize,
    oracle_radius: usize,
) -> (usize, usize, usize) {
    let r = fs_type_census(group, id, window, d, radius).unwrap();
    let counts = brute_root_counts(group, oracle_radius, d);
    let ball = enumerate_ball(group, radius, window, BALL_CAP).unwrap();
    let xs: Vec<&C::Word> = ball
        .elements
        .iter()
        .filter(|x| !group.is_elliptic(x) && !group.is_dth_power(x, d).unwrap().is_power)
        .collect();
    let mut mismatches = (xs.len() != r.entries.len()) as usize;
    for (x, e) in xs.iter().zip(&r.entries) {
        let brute = counts.get(&group.power(x, d as i64)).copied().unwrap_or(0);
        if group.format(x) != e.element || brute != e.roots {
            mismatches += 1;
        }
    }
    (r.s_observed, r.entries.len(), mismatches)
}

fn central_dichotomy() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for k in 1..=3u32 {
        let id = format!("central_k{k}");
        let p = amalgam(&id);
        for (d, expected) in [(2u32, 1usize << k), (3, 1)] {
            let (s, entries, mismatches) = census_matches_brute(&p, &id, p.window(), d, 4, 6);
            pass &= s == expected && mismatches == 0 && entries > 0;
            notes.push(format!("k={k} d={d}: s={s}"));
        }
    }
    outcome(pass, format!("{}; brute force over radius 6 agrees", notes.join(", ")))
}

fn malnormal_law() -> Outcome {
    let p = amalgam("s3_c2_s3");
    let mut notes = Vec::new();
    let mut pass = true;
    for d in [2u32, 3] {
        let (s, entries, mismatches) = census_matches_brute(&p, "s3_c2_s3", p.window(), d, 4, 8);
        let counts = brute_root_counts(&p, 8, d);
        let (ball, _) = p.ball(4, BALL_CAP).unwrap();
        let not_unique = ball
            .iter()
            .filter(|x| !p.is_elliptic(x))
            .filter(|x| counts.get(&p.power(x, d as i64)).copied() != Some(1))
            .count();
        pass &= s == 1 && mismatches == 0 && not_unique == 0 && entries > 0;
        notes.push(format!("d={d}: s={s}, {not_unique} non-unique"));
    }
    outcome(pass, notes.join(", "))
}

fn conjugacy_oracle() -> Outcome {
    let p = amalgam("z2_z3");
    let (b3, _) = p.ball(3, BALL_CAP).unwrap();
    let (b4, _) = p.ball(4, BALL_CAP).unwrap();
    let mut positives = 0usize;
    let mut disagreements = 0usize;
    for x in &b3 {
        for y in &b3 {
            let brute = b4.iter().any(|w| p.mul(&p.mul(w, x), &p.invert(w)) == *y);
            let found = p.are_conjugate(x, y).unwrap();
            if let Some(c) = &found {
                if p.mul(&p.mul(c, x), &p.invert(c)) != *y {
                    disagreements += 1;
                }
            }
            if brute {
                positives += 1;
                if found.is_none() {
                    disagreements += 1;
                }
            }
        }
    }
    outcome(
        disagreements == 0,
        format!(
            "{disagreements} disagreements over {} pairs ({positives} brute-force positive)",
            b3.len() * b3.len()
        ),
    )
}

fn dihedral_exclusion() -> Outcome {
    let p = amalgam("dihedral");
    let flagged = p.is_dihedral() && !p.is_nondegenerate();
    let refused = matches!(
        verify_lemma1(&p, "z2_z2", p.window(), 2, 1, Schedule::Escalating),
        Err(Error::Degenerate(_))
    );
    let r = generosity_escapee(&p, "z2_z2", p.window(), 2, 6).unwrap();
    let none = r.escapee.is_none() && r.exact;
    outcome(
        flagged && refused && none,
        format!(
            "flagged={flagged}, verify refused={refused}, escapee={:?} among {}",
            r.escapee, r.searched
        ),
    )
}

fn reports() -> Vec<String> {
    let mut out = Vec::new();
    let z = amalgam("z2_z3");
    for n in 0..=2 {
        out.push(to_json(
            &verify_lemma1(&z, "z2_z3", 2, 2, n, Schedule::Fixed(Exponents::classical(n))).unwrap(),
        ));
    }
    let s3 = amalgam("s3_c2_s3");
    let bs = hnn("bs23");
    for d in [2, 3] {
        for n in [0, 1] {
            out.push(to_json(
                &verify_lemma1(&s3, "s3_c2_s3", 2, d, n, Schedule::Escalating).unwrap(),
            ));
            out.push(to_json(
                &verify_lemma1(&bs, "bs23", bs.window(), d, n, Schedule::Escalating).unwrap(),
            ));
        }
        out.push(to_json(&fs_type_census(&s3, "s3_c2_s3", 2, d, 4).unwrap()));
    }
    for k in 1..=3 {
        let id = format!("central_k{k}");
        let p = amalgam(&id);
        for d in [2, 3] {
            out.push(to_json(&fs_type_census(&p, &id, p.window(), d, 4).unwrap()));
        }
    }
    out
}

fn determinism() -> Outcome {
    let runs: Vec<Vec<String>> = [1usize, 4, 8]
        .iter()
        .map(|&w| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .unwrap()
                .install(reports)
        })
        .collect();
    let identical = runs.windows(2).all(|w| w[0] == w[1]);
    let bytes: usize = runs[0].iter().map(String::len).sum();
    outcome(
        identical,
        format!("{} reports, {bytes} bytes, identical for 1/4/8 workers", runs[0].len()),
    )
}

fn main() {
    let secs = Duration::from_secs;
    let z = amalgam("s3_c2_s3");
    let bs = hnn("bs23");
    let results = [
        run(1, "normal-form soundness", secs(10), normal_form_soundness),
        run(2, "Britton reduction", secs(30), britton),
        run(3, "witness, fixed exponents", secs(180), witness_fixed),
        run(4, "witness, amalgamated S3", secs(300), || {
            witness_escalating(&z, "s3_c2_s3", 2, &[2, 3], &[0, 1])
        }),
        run(5, "witness, HNN extension", secs(300), || {
            witness_escalating(&bs, "bs23", bs.window(), &[2, 3], &[0, 1])
        }),
        run(6, "central root census", secs(120), central_dichotomy),
        run(7, "malnormal unique roots", secs(120), malnormal_law),
        run(8, "conjugacy vs brute force", secs(120), conjugacy_oracle),
        run(9, "dihedral exclusion", secs(30), dihedral_exclusion),
        run(10, "determinism across workers", secs(900), determinism),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}

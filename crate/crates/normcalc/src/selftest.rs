//! The acceptance checks, runnable from the binary.

use std::time::{Duration, Instant};

use normcalc_core::alexander::{alexander_minor, alexander_polynomial, euler_polynomial, normalize, wirtinger};
use normcalc_core::cabling::{cable_thurston, cable_top_grading, cable_y, torus_knot_top, CableParams};
use normcalc_core::norms::{dual_thurston_polytope, floer_polytope_alternating, thurston_norm};
use normcalc_core::polytope::newton;
use normcalc_core::{CohomologyClass, Exponent, Half, MultivariateLaurent};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::bundled;
use crate::diagram::parse_diagram;
use crate::error::CliError;
use crate::format::load_pd;

#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = Result<String, String>;

fn err<E: std::fmt::Display>(ctx: &str) -> impl FnOnce(E) -> String + '_ {
    move |e| format!("{ctx}: {e}")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn delta_of(name: &str) -> Result<MultivariateLaurent, String> {
    let l = load_pd(name).map_err(err(name))?;
    alexander_polynomial(&l.diagram).map_err(err(name))
}

/// The twelve terms printed for 9a42, as doubled exponents.
pub const PAPER_9A42: [((i64, i64), i64); 12] = [
    ((-3, 3), -1),
    ((-1, 3), 1),
    ((-3, 1), 2),
    ((-1, 1), -5),
    ((1, 1), 4),
    ((3, 1), -1),
    ((-3, -1), -1),
    ((-1, -1), 4),
    ((1, -1), -5),
    ((3, -1), 2),
    ((1, -3), 1),
    ((3, -3), -1),
];

pub fn paper_9a42() -> MultivariateLaurent {
    MultivariateLaurent::from_terms(
        2,
        PAPER_9A42
            .iter()
            .map(|((a, b), c)| (Exponent::from_doubled(vec![*a, *b]), *c)),
    )
    .expect("two variables")
}

fn c1() -> Check {
    let start = Instant::now();
    let d = delta_of("9a42")?;
    let took = start.elapsed();
    let p = paper_9a42();
    ensure(d == p || d == -p.clone(), || format!("got {d}"))?;
    ensure(took < Duration::from_secs(1), || format!("took {took:?}"))?;
    Ok("12 terms match, under 1 s".into())
}

fn c2() -> Check {
    let d = delta_of("L10n36")?;
    ensure(d.is_zero(), || format!("got {d}"))?;
    Ok("Delta = 0".into())
}

pub const HEXAGON_9A42: [(i64, i64); 6] = [(-3, 3), (-1, 3), (3, 1), (3, -3), (1, -3), (-3, -1)];
pub const EXCLUDED_9A42: [(i64, i64); 4] = [(3, 3), (1, 3), (-3, -3), (-1, -3)];

fn c3() -> Check {
    let l = load_pd("9a42").map_err(err("9a42"))?;
    let (p, _) = floer_polytope_alternating(&l.diagram).map_err(err("floer polytope"))?;
    // Fails unless the Minkowski reconstruction succeeds.
    let dual = dual_thurston_polytope(&p).map_err(err("dual polytope"))?;
    let mut got: Vec<Exponent> = dual.vertices().map_err(err("hull"))?;
    got.sort();
    let mut want: Vec<Exponent> = HEXAGON_9A42.iter().map(|&(a, b)| Exponent::from_ints(&[a, b])).collect();
    want.sort();
    ensure(got == want, || format!("vertices {got:?}"))?;
    for &(a, b) in &EXCLUDED_9A42 {
        let inside = dual.contains(&Exponent::from_ints(&[a, b])).map_err(err("hull"))?;
        ensure(!inside, || format!("contains ({a},{b})"))?;
    }
    let strip = dual.points().iter().all(|v| v.doubled().iter().all(|d| d.abs() <= 6));
    ensure(strip, || "leaves the strip |x|,|y| <= 3".into())?;
    Ok("hexagon, excluded points absent, strip, reconstruction".into())
}

fn c4() -> Check {
    let mut out = Vec::new();
    for (name, p, q) in [("trefoil", 2, 3), ("T2_5", 2, 5), ("T3_4", 3, 4), ("T3_5", 3, 5)] {
        let d = delta_of(name)?;
        let top = d.leading().ok_or_else(|| format!("{name}: zero"))?.0.coord(0);
        let want = torus_knot_top(p, q).map_err(err(name))?;
        ensure(top == want, || format!("T({p},{q}): top {top}, expected {want}"))?;
        out.push(format!("T({p},{q})={top}"));
    }
    Ok(out.join(" "))
}

/// Random symmetric linking matrix with zero diagonal.
fn random_linking(rng: &mut StdRng, l: usize) -> Vec<Vec<i64>> {
    let mut lk = vec![vec![0; l]; l];
    for i in 0..l {
        for j in i + 1..l {
            let v = rng.gen_range(-3..=3);
            lk[i][j] = v;
            lk[j][i] = v;
        }
    }
    lk
}

fn c5() -> Check {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_cab1e);
    let (mut accepted, mut rejected) = (0, 0);
    while accepted < 200 {
        let l = rng.gen_range(1..=4);
        let lk = random_linking(&mut rng, l);
        let p: Vec<i64> = (0..l).map(|_| rng.gen_range(2..=5)).collect();
        let n: Vec<i64> = (0..l).map(|_| rng.gen_range(1..=10)).collect();
        let c = CableParams::from_windings(lk, p, n).map_err(err("params"))?;
        // The formulas are only claimed for q at least the framing Q.
        if c.q.iter().zip(&c.big_q).any(|(q, bq)| q < bq) {
            rejected += 1;
            continue;
        }
        let sum_p: i64 = c.p.iter().sum();
        let y = Half::from_doubled(sum_p + 2 * rng.gen_range(0..20));
        let x = cable_thurston(y.twice() - sum_p, &c).map_err(err("x"))?;
        let lhs = cable_y(y, &c).twice() - x;
        ensure(lhs == l as i64, || format!("identity fails for {c:?}: {lhs}"))?;
        accepted += 1;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), || format!("took {took:?}"))?;
    Ok(format!("200 sets ({rejected} below framing skipped), under 1 s"))
}

fn c6() -> Check {
    let lk = vec![vec![0, 1], vec![1, 0]];
    let c = CableParams::new(lk, vec![2, 3], vec![7, 7]).map_err(err("params"))?;
    let h1 = cable_top_grading(&Exponent::from_doubled(vec![1, 1]), &c).map_err(err("h1"))?;
    ensure(h1 == Exponent::from_ints(&[6, 9]), || format!("h1 = {h1:?}"))?;
    let y = cable_y(Half::from_doubled(5), &c);
    ensure(h1.coordinate_sum() == y && y == Half::from_int(15), || format!("sum {} vs y {y}", h1.coordinate_sum()))?;
    Ok("h1 = (6,9), sum 15 = y".into())
}

fn c7() -> Check {
    let mut out = Vec::new();
    for b in bundled::DIAGRAMS {
        let nd = parse_diagram(b.name, b.json).map_err(err(b.name))?;
        nd.diagram.check_grading_consistency().map_err(err(b.name))?;
        let hd = nd.diagram.euler_polynomial().map_err(err(b.name))?;
        let l = load_pd(b.link).map_err(err(b.link))?;
        let pd = euler_polynomial(&l.diagram).map_err(err(b.link))?;
        ensure(hd == pd || hd == -pd.clone(), || format!("{}: {hd} vs {pd}", b.name))?;
        out.push(b.name);
    }
    Ok(out.join(", "))
}

fn c8() -> Check {
    let mut minors = 0usize;
    for b in bundled::LINKS {
        let l = load_pd(b.name).map_err(err(b.name))?;
        let d = &l.diagram;
        let delta = alexander_polynomial(d).map_err(err(b.name))?;
        let inv = delta.involute();
        ensure(inv == delta || inv == -delta.clone(), || format!("{}: not symmetric", b.name))?;
        if (1..=9).contains(&d.crossing_count()) && !delta.is_zero() {
            let n = wirtinger(d).map_err(err(b.name))?.generator_count();
            for row in 0..n {
                for col in 0..n {
                    let m = alexander_minor(d, row, col).map_err(err(b.name))?;
                    let m = normalize(&m).map_err(err(b.name))?;
                    ensure(m == delta, || format!("{}: minor ({row},{col}) gives {m}", b.name))?;
                    minors += 1;
                }
            }
        }
        let e = euler_polynomial(d).map_err(err(b.name))?;
        if e.is_zero() {
            continue;
        }
        let p = newton(&e).map_err(err(b.name))?;
        ensure(p.is_centrally_symmetric().unwrap_or(false), || format!("{}: polytope not symmetric", b.name))?;
        // The unknot's norm vanishes identically and has no dual ball to erode.
        if b.name != "unknot" {
            let dual = dual_thurston_polytope(&p).map_err(err(b.name))?;
            ensure(dual.is_centrally_symmetric().unwrap_or(false), || format!("{}: dual not symmetric", b.name))?;
        }
    }
    Ok(format!("{} links, {minors} minors", bundled::LINKS.len()))
}

fn c9() -> Check {
    for name in ["trefoil", "figure8"] {
        let l = load_pd(name).map_err(err(name))?;
        let (p, _) = floer_polytope_alternating(&l.diagram).map_err(err(name))?;
        let r = thurston_norm(&p, &CohomologyClass::new(vec![1])).map_err(err(name))?;
        ensure(r.y == Half::from_int(1) && r.x == 1, || format!("{name}: y {} x {}", r.y, r.x))?;
    }
    Ok("trefoil and figure-eight: y = 1, x = 1".into())
}

type Entry = (u32, &'static str, fn() -> Check);

pub const CRITERIA: [Entry; 9] = [
    (1, "9a42 Alexander polynomial", c1),
    (2, "Kinoshita-Terasaka link has vanishing Alexander polynomial", c2),
    (3, "9a42 dual Thurston polytope", c3),
    (4, "torus knot top gradings", c4),
    (5, "cable norm identity on random parameters", c5),
    (6, "Hopf cable top grading", c6),
    (7, "Heegaard Euler characteristics match Alexander", c7),
    (8, "symmetry and minor independence", c8),
    (9, "genus of trefoil and figure-eight", c9),
];

pub fn run() -> Vec<Criterion> {
    CRITERIA
        .iter()
        .map(|&(id, name, f)| {
            let (passed, detail) = match f() {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            Criterion { id, name, passed, detail }
        })
        .collect()
}

pub fn render_text(results: &[Criterion]) -> String {
    let mut s = String::new();
    for c in results {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        s.push_str(&format!("{tag} {}. {}: {}\n", c.id, c.name, c.detail));
    }
    s
}

pub fn all_passed(results: &[Criterion]) -> bool {
    results.iter().all(|c| c.passed)
}

/// Wraps a failed run for the binary's exit code.
pub fn into_result(results: &[Criterion]) -> Result<(), CliError> {
    if all_passed(results) {
        Ok(())
    } else {
        let failed: Vec<String> = results.iter().filter(|c| !c.passed).map(|c| c.id.to_string()).collect();
        Err(CliError::Domain(format!("selftest failed: {}", failed.join(", "))))
    }
}

//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Criteria 3 to 6, 8 and 9 drive the `rankjump` binary.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankjump_core::arith::poly::Poly;
use rankjump_core::arith::rat::{int, parse_rat};
use rankjump_core::arith::squarefree::squarefree_part_rat;
use rankjump_core::elliptic::{
    canonical_height, gram_certify, parse_curve, parse_point, small_relation_search, Point,
};
use rankjump_core::engine::{certify_fiber, Status};
use rankjump_core::families::{fiber_at, specialize_sections, Family, FamilySpec, TotalSpacePoint};
use rankjump_core::{CurveQ, PointQ, PolyQ, RatFunc};

/// Scan and fiber certification tolerance.
const TOL: f64 = 1e-4;
/// Single-point height queries.
const TOL_POINT: f64 = 1e-6;
/// Randomized quadraticity and parallelogram checks.
const TOL_LAWS: f64 = 1e-3;
/// Gram tolerance for constructed dependent sets.
const TOL_DEPENDENT: f64 = 1e-3;
/// `oracles/height_doubling.py -16 16 0 4 12`.
const ORACLE_37A: f64 = 0.05111149078389563;

struct Ctx {
    dir: tempfile::TempDir,
    families: PathBuf,
}

impl Ctx {
    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn family(&self, name: &str) -> String {
        self.families.join(name).to_string_lossy().into_owned()
    }
}

fn rankjump(args: &[&str]) -> Result<(String, Duration), String> {
    let start = Instant::now();
    let o = Command::new(env!("CARGO_BIN_EXE_rankjump"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if !o.status.success() {
        return Err(format!(
            "rankjump {args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        ));
    }
    Ok((String::from_utf8_lossy(&o.stdout).into_owned(), elapsed))
}

fn scan(ctx: &Ctx, family: &str, bound: u64, out: &str, jobs: usize) -> Result<Duration, String> {
    let out = ctx.path(out);
    let (_, t) = rankjump(&[
        "scan",
        "--family",
        &ctx.family(family),
        "--bound",
        &bound.to_string(),
        "--tol",
        &TOL.to_string(),
        "--out",
        &out.to_string_lossy(),
        "--jobs",
        &jobs.to_string(),
    ])?;
    Ok(t)
}

fn rows(path: &Path) -> Vec<csv::StringRecord> {
    let mut r = csv::Reader::from_path(path).expect("scan csv");
    r.records().map(|x| x.expect("csv row")).collect()
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).expect("json file")).expect("valid json")
}

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn curve_through_two_points(r: &mut impl Rng) -> (CurveQ, PointQ, PointQ) {
    loop {
        let x1: i64 = r.gen_range(-12..=12);
        let (y1, y2): (i64, i64) = (r.gen_range(1..=30), r.gen_range(1..=30));
        let x2 = x1 + 1;
        let a = (y2 * y2 - x2.pow(3)) - (y1 * y1 - x1.pow(3));
        let b = y1 * y1 - x1.pow(3) - a * x1;
        let Ok(c) = CurveQ::new(int(a), int(b)) else {
            continue;
        };
        let (p, q) = (
            Point::Affine(int(x1), int(y1)),
            Point::Affine(int(x2), int(y2)),
        );
        if !c.is_torsion(&p).unwrap() && !c.is_torsion(&q).unwrap() {
            return (c, p, q);
        }
    }
}

fn combo(c: &CurveQ, m: i64, p: &PointQ, n: i64, q: &PointQ) -> PointQ {
    c.add(&c.mul(m, p).unwrap(), &c.mul(n, q).unwrap()).unwrap()
}

fn poly(c: &[i64]) -> PolyQ {
    Poly::new(c.iter().map(|&n| int(n)).collect())
}

fn group_law(_: &Ctx) -> Result<String, String> {
    let start = Instant::now();
    let mut r = rng(1);
    let mut checks = 0;
    for _ in 0..20 {
        let (c, p, q) = curve_through_two_points(&mut r);
        let primes: Vec<u64> = (5u64..)
            .filter(|&l| (2..l).take_while(|d| d * d <= l).all(|d| l % d != 0))
            .filter(|&l| c.reduce_mod_p(l).is_ok())
            .take(3)
            .collect();
        for _ in 0..50 {
            let mut pick = || combo(&c, r.gen_range(-2..=2), &p, r.gen_range(-2..=2), &q);
            let (a, b, d) = (pick(), pick(), pick());
            let ab = c.add(&a, &b).unwrap();
            ensure(ab == c.add(&b, &a).unwrap(), "commutativity")?;
            ensure(
                c.add(&ab, &d).unwrap() == c.add(&a, &c.add(&b, &d).unwrap()).unwrap(),
                "associativity",
            )?;
            for &l in &primes {
                let cl = c.reduce_mod_p(l).unwrap();
                let lhs = c.reduce_point_mod_p(&ab, l).unwrap();
                let rhs = cl
                    .add(
                        &c.reduce_point_mod_p(&a, l).unwrap(),
                        &c.reduce_point_mod_p(&b, l).unwrap(),
                    )
                    .unwrap();
                ensure(lhs == rhs, format!("reduction mod {l}"))?;
            }
            checks += 1;
        }
    }
    let t = start.elapsed();
    ensure(checks == 1000, "triple count")?;
    ensure(t < Duration::from_secs(30), format!("took {t:?}"))?;
    Ok(format!(
        "{checks} triples on 20 curves, 3 primes each, {:.1}s",
        t.as_secs_f64()
    ))
}

fn heights(_: &Ctx) -> Result<String, String> {
    let c = parse_curve("-16,16").unwrap();
    let h =
        canonical_height(&c, &parse_point("0,4").unwrap(), TOL_POINT).map_err(|e| e.to_string())?;
    ensure(
        (h.value_f64() - 0.0511114).abs() < 1e-4,
        format!("37a value {}", h.value_f64()),
    )?;
    ensure(
        (h.value_f64() - ORACLE_37A).abs() <= h.err + 1e-6,
        "37a disagrees with the oracle",
    )?;

    let mut r = rng(2);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let (c, p, q) = curve_through_two_points(&mut r);
        let hh = |x: &PointQ| canonical_height(&c, x, TOL_LAWS).unwrap();
        let (hp, hq) = (hh(&p), hh(&q));
        let h2 = hh(&c.double(&p).unwrap());
        let quad = (h2.value_f64() - 4.0 * hp.value_f64()).abs();
        let quad_bound = h2.err + 4.0 * hp.err;
        ensure(quad <= quad_bound, format!("quadraticity residual {quad}"))?;
        let s = hh(&c.add(&p, &q).unwrap());
        let d = hh(&c.sub(&p, &q).unwrap());
        let par =
            (s.value_f64() + d.value_f64() - 2.0 * hp.value_f64() - 2.0 * hq.value_f64()).abs();
        let par_bound = s.err + d.err + 2.0 * hp.err + 2.0 * hq.err;
        ensure(par <= par_bound, format!("parallelogram residual {par}"))?;
        worst = worst.max(quad / quad_bound).max(par / par_bound);
    }
    Ok(format!(
        "h(0,4) = {:.7} +/- {:.1e}; 100 points, worst residual/bound {worst:.3}",
        h.value_f64(),
        h.err
    ))
}

fn jump_params(path: &Path) -> Vec<(String, csv::StringRecord)> {
    rows(path)
        .into_iter()
        .filter(|r| &r[6] == "true")
        .map(|r| (r[0].to_string(), r))
        .collect()
}

fn cubic_pencil(ctx: &Ctx) -> Result<String, String> {
    let t = scan(ctx, "cubic_pencil.json", 12, "cubic.csv", 1)?;
    let jumps = jump_params(&ctx.path("cubic.csv"));
    let distinct: BTreeSet<&str> = jumps.iter().map(|(p, _)| p.as_str()).collect();
    ensure(
        distinct.len() >= 30,
        format!("{} certified params", distinct.len()),
    )?;
    ensure(
        distinct.contains("-5/6") && distinct.contains("3/4"),
        "-5/6 or 3/4 missing",
    )?;
    ensure(t < Duration::from_secs(120), format!("took {t:?}"))?;
    Ok(format!(
        "{} certified params incl. -5/6 and 3/4, {:.1}s",
        distinct.len(),
        t.as_secs_f64()
    ))
}

fn twist_linear(ctx: &Ctx) -> Result<String, String> {
    scan(ctx, "congruent.json", 20, "congruent.csv", 1)?;
    let jumps = jump_params(&ctx.path("congruent.csv"));
    let classes: BTreeSet<String> = jumps
        .iter()
        .map(|(p, _)| {
            squarefree_part_rat(&parse_rat(p).unwrap())
                .unwrap()
                .squarefree()
                .to_string()
        })
        .collect();
    ensure(
        classes.len() >= 50,
        format!("{} squarefree t0", classes.len()),
    )?;
    let six = jumps
        .iter()
        .find(|(p, _)| p == "6")
        .ok_or("t0 = 6 not certified")?;
    ensure(
        &six.1[3] == "12,36",
        format!("t0 = 6 witness {}", &six.1[3]),
    )?;
    let density = json(&ctx.path("congruent.density.json"));
    let coverage = density["real_histogram"]["coverage"].as_f64().unwrap();
    ensure(coverage >= 0.6, format!("histogram coverage {coverage}"))?;
    let mod5 = density["padic"]
        .as_array()
        .unwrap()
        .iter()
        .find(|x| x["p"] == 5 && x["k"] == 1)
        .ok_or("no mod 5 entry")?;
    ensure(
        mod5["coverage"].as_f64() == Some(1.0),
        "mod 5 coverage below 100%",
    )?;
    Ok(format!(
        "{} squarefree t0, 6 -> (12,36), histogram coverage {coverage}, mod 5 coverage 1",
        classes.len()
    ))
}

fn twist_quadratic(ctx: &Ctx) -> Result<String, String> {
    scan(ctx, "twist_quadratic.json", 40, "quadratic.csv", 1)?;
    let jumps = jump_params(&ctx.path("quadratic.csv"));
    let one = jumps
        .iter()
        .find(|(p, _)| p == "1")
        .ok_or("lambda0 = 1 not certified")?;
    ensure(
        (&one.1[1], &one.1[2], &one.1[3]) == ("0", "8", "2,4"),
        "lambda0 = 1 row is not (2,4) on Y^2 = X^3 + 8",
    )?;
    ensure(
        jumps.len() >= 10,
        format!("{} certified params", jumps.len()),
    )?;
    let density = json(&ctx.path("quadratic.density.json"));
    let regions = density["component_coverage"]["regions"]
        .as_array()
        .ok_or("no component report")?;
    ensure(
        regions.len() == 1 && regions[0]["hit"] == true,
        "sign region not hit",
    )?;
    Ok(format!(
        "lambda0 = 1 via (2,4) on (0,8), {} certified params, 1 region hit",
        jumps.len()
    ))
}

fn billing(ctx: &Ctx) -> Result<String, String> {
    let out = ctx.path("billing.json");
    let (_, t) = rankjump(&[
        "billing",
        "--p",
        "0,-1,0,1",
        "--rank",
        "3",
        "--bound",
        "10",
        "--tol",
        &TOL.to_string(),
        "--out",
        &out.to_string_lossy(),
    ])?;
    let cert = json(&out);
    ensure(
        cert["classes"] == serde_json::json!(["6", "15", "30"]),
        format!("classes {}", cert["classes"]),
    )?;
    let p = poly(&[0, -1, 0, 1]);
    let expected = ["12,36", "60,450", "150,1800"];
    for (w, want) in cert["witnesses"].as_array().unwrap().iter().zip(expected) {
        let point = parse_point(w["point"].as_str().unwrap()).map_err(|e| e.to_string())?;
        ensure(
            point == parse_point(want).unwrap(),
            format!("witness {}", w["point"]),
        )?;
        let d = parse_rat(w["class"].as_str().unwrap()).unwrap();
        let twist = CurveQ::new(-(&d * &d), int(0)).unwrap();
        ensure(twist.contains(&point), "point off its twist")?;
        let (x0, s) = (
            parse_rat(w["x0"].as_str().unwrap()).unwrap(),
            parse_rat(w["s"].as_str().unwrap()).unwrap(),
        );
        ensure(p.eval(&x0) == &d * &s * &s, "p(x0) != d s^2")?;
        ensure(!twist.is_torsion(&point).unwrap(), "torsion witness")?;
    }
    ensure(t < Duration::from_secs(60), format!("took {t:?}"))?;
    Ok(format!(
        "classes 6, 15, 30 re-validated exactly, {:.2}s",
        t.as_secs_f64()
    ))
}

fn neron_pencil() -> FamilySpec {
    let l = |c: &[i64]| RatFunc::from_poly(poly(c), &int(1));
    FamilySpec::new(Family::WeierstrassPencil {
        a: l(&[1]),
        b: l(&[0, -1, 1, -1]),
        sections: vec![(l(&[0, 1]), l(&[0, 1]))],
    })
}

fn negative_controls(_: &Ctx) -> Result<String, String> {
    let mut passed = 0;
    let mut total = 0;
    let mut tally = |ok: bool| {
        total += 1;
        passed += usize::from(ok);
    };
    let dependent = |c: &CurveQ, pts: &[PointQ], honest: usize| {
        let g = gram_certify(c, pts, TOL_DEPENDENT).unwrap();
        let relation = small_relation_search(c, pts, 12).unwrap();
        g.rank_lower_bound() <= honest && !g.certified && relation.is_some()
    };
    let mut r = rng(7);
    for _ in 0..15 {
        let (c, p, _) = curve_through_two_points(&mut r);
        let two_p = c.double(&p).unwrap();
        tally(dependent(&c, &[p, two_p], 1));
    }
    for _ in 0..15 {
        let (c, p, q) = curve_through_two_points(&mut r);
        let minus_p = c.neg(&p);
        tally(dependent(&c, &[p, minus_p, q], 2));
    }
    for (n, x, y) in [
        (6, 12, 36),
        (5, -4, 6),
        (7, 25, 120),
        (6, -3, 9),
        (5, 45, 300),
    ] {
        let c = CurveQ::new(int(-n * n), int(0)).unwrap();
        let p = Point::Affine(int(x), int(y));
        let pt = c.add(&p, &Point::Affine(int(0), int(0))).unwrap();
        tally(dependent(&c, &[p, pt], 1));
    }

    let twist = FamilySpec::new(Family::TwistLinear {
        p: poly(&[1, 0, 0, 1]),
    });
    let pencil = neron_pencil();
    let torsion = [
        (&twist, 1, (2, 3)),
        (&twist, 1, (0, 1)),
        (&twist, 1, (0, -1)),
        (&twist, 1, (2, -3)),
        (&pencil, 0, (0, 0)),
    ];
    for (f, l, (x, y)) in torsion {
        let w = TotalSpacePoint {
            param: int(l),
            witness: Point::Affine(int(x), int(y)),
            raw: vec![int(x), int(y)],
        };
        let cert = certify_fiber(f, &w, TOL).unwrap();
        tally(!cert.jump && cert.status == Status::TorsionWitness);
    }
    for l in [2, 3, -1, -2, 4] {
        let s = specialize_sections(&pencil, &int(l)).unwrap().remove(0);
        let c = fiber_at(&pencil, &int(l)).unwrap().curve;
        for witness in [s.clone(), c.double(&s).unwrap()] {
            let w = TotalSpacePoint {
                param: int(l),
                raw: vec![],
                witness,
            };
            let cert = certify_fiber(&pencil, &w, TOL).unwrap();
            tally(!cert.jump && cert.certified_rank_lb <= 1);
        }
    }
    ensure(
        total == 50 && passed == total,
        format!("{passed}/{total} cases"),
    )?;
    Ok(format!("{passed}/{total} cases"))
}

fn neron(ctx: &Ctx) -> Result<String, String> {
    let out = ctx.path("neron.json");
    rankjump(&[
        "neron",
        "--family",
        &ctx.family("neron_pencil.json"),
        "--bound",
        "15",
        "--tol",
        &TOL.to_string(),
        "--out",
        &out.to_string_lossy(),
    ])?;
    let report = json(&out);
    let fraction = report["failure_fraction"].as_f64().unwrap();
    ensure(fraction < 0.2, format!("failure fraction {fraction}"))?;
    Ok(format!(
        "{} fibers sampled, failure fraction {fraction:.4}",
        report["sampled"]
    ))
}

fn determinism(ctx: &Ctx) -> Result<String, String> {
    let runs = [
        ("cubic_pencil.json", 12, "cubic"),
        ("congruent.json", 20, "congruent"),
        ("twist_quadratic.json", 40, "quadratic"),
    ];
    let mut compared = 0;
    for (family, bound, stem) in runs {
        scan(ctx, family, bound, &format!("{stem}.j4.csv"), 4)?;
        for suffix in ["csv", "density.json", "histogram.csv"] {
            let a =
                std::fs::read(ctx.path(&format!("{stem}.{suffix}"))).map_err(|e| e.to_string())?;
            let b = std::fs::read(ctx.path(&format!("{stem}.j4.{suffix}")))
                .map_err(|e| e.to_string())?;
            ensure(a == b, format!("{stem}.{suffix} differs with --jobs 4"))?;
            compared += 1;
        }
    }
    let (again, _) = rankjump(&[
        "billing",
        "--p",
        "0,-1,0,1",
        "--rank",
        "3",
        "--bound",
        "10",
        "--tol",
        &TOL.to_string(),
    ])?;
    let first = std::fs::read_to_string(ctx.path("billing.json")).map_err(|e| e.to_string())?;
    ensure(again == first, "billing output differs between runs")?;
    Ok(format!(
        "{} files identical across runs and worker counts",
        compared + 1
    ))
}

type Criterion = fn(&Ctx) -> Result<String, String>;

fn main() -> ExitCode {
    let ctx = Ctx {
        dir: tempfile::tempdir().expect("temp dir"),
        families: Path::new(env!("CARGO_MANIFEST_DIR")).join("../../families"),
    };
    let criteria: [(&str, Criterion); 9] = [
        ("group law", group_law),
        ("heights", heights),
        ("cubic pencil scan", cubic_pencil),
        ("linear twist scan", twist_linear),
        ("quadratic twist scan", twist_quadratic),
        ("multiquadratic billing", billing),
        ("negative controls", negative_controls),
        ("specialization check", neron),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(|| check(&ctx)))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

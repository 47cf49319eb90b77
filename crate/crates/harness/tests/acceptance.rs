//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Tolerances and sizes are fixed here and nowhere else.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sphereworld::planner::{rule_census, witness_pairs, LANE_SPACING};
use sphereworld::sample::{boundary_point, free_configuration, free_point, random_world, unit_vector};
use sphereworld::{
    tc_value, validate_path, CollarAtlas64, Configuration64, Mode, Obstacle, PiecewisePath64, Planner64, Point64,
    PunctureMap64, SamplingOptions, Segment, SphereId, SphereWorld64, TargetSpace, TransportedPlanner64,
};
use sphereworld_harness::probe::{probe_continuity, ProbeOptions, LIPSCHITZ_LIMIT};
use sphereworld_harness::Engine;

const R0: f64 = 10.0;

// TC table
const TC_K: (usize, usize) = (2, 50);
const TC_M: (usize, usize) = (0, 10);
const TC_N: (usize, usize) = (2, 11);
const TC_BUDGET: Duration = Duration::from_secs(1);

// retraction
const RETRACT_WORLDS: usize = 20;
const RETRACT_POINTS: usize = 10_000;
const INJECTIVITY_PAIRS: usize = 100_000;
const ISOTOPY_END_TOL: f64 = 8.0 * f64::EPSILON;
const HALF_WIDTH_TOL: f64 = 1e-12;
const RETRACT_BUDGET: Duration = Duration::from_secs(30);

// homeomorphism
const ROUND_TRIP_POINTS: usize = 10_000;
const ROUND_TRIP_TOL: f64 = 1e-9;
const MIN_PROBED_CLEARANCE: f64 = 1e-6;
const SEAM_TOL: f64 = 1e-12;

// paths
const PATH_PAIRS: usize = 1_000;
const PATH_MAX_K: usize = 4;
const PATH_BUDGET: Duration = Duration::from_secs(300);

// oracle
const SWAP_SEPARATION: f64 = 0.4;

// continuity
const PROBE_TRIALS: usize = 200;
const PROBE_DELTA: f64 = 1e-6;

struct Outcome {
    pass: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { pass: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { pass: false, detail: detail.into() }
}

fn check(cond: bool, detail: String) -> Outcome {
    Outcome { pass: cond, detail }
}

/// Closed forms per space, written out independently of the engine.
fn disk_tc(n: usize, k: usize) -> usize {
    if n % 2 == 1 { 2 * k - 1 } else { 2 * k - 2 }
}

fn punctured_tc(n: usize, m: usize, k: usize) -> usize {
    match (n % 2, m) {
        (_, 0) => disk_tc(n, k),
        (0, 1) => 2 * k,
        (0, _) => 2 * k + 1,
        _ => 2 * k + 1,
    }
}

fn tc_table() -> Outcome {
    let clock = Instant::now();
    let frozen = [((2, 0, 2), 2), ((3, 1, 2), 5), ((4, 2, 3), 7), ((2, 1, 5), 10), ((3, 0, 50), 99), ((11, 10, 50), 101)];
    for ((n, m, k), want) in frozen {
        if tc_value(n, m, k) != Ok(want) {
            return fail(format!("tc({n},{m},{k}) != {want}"));
        }
    }
    let mut checked = 0;
    for n in TC_N.0..=TC_N.1 {
        for m in TC_M.0..=TC_M.1 {
            for k in TC_K.0..=TC_K.1 {
                let v = match tc_value(n, m, k) {
                    Ok(v) => v,
                    Err(e) => return fail(format!("({n},{m},{k}): {e}")),
                };
                if v != punctured_tc(n, m, k) {
                    return fail(format!("({n},{m},{k}) gave {v}"));
                }
                if n + 2 <= TC_N.1 && tc_value(n + 2, m, k) != Ok(v) {
                    return fail(format!("parity independence fails at ({n},{m},{k})"));
                }
                checked += 1;
            }
        }
    }
    if tc_value(1, 0, 2).is_ok() || tc_value(2, 0, 1).is_ok() {
        return fail("out-of-range inputs accepted");
    }
    let took = clock.elapsed();
    check(took < TC_BUDGET, format!("{checked} triples exact in {took:.2?}"))
}

fn world_grid() -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..RETRACT_WORLDS {
        out.push(([2, 3, 5][i % 3], [0, 1, 3][(i / 3) % 3]));
    }
    out
}

fn sphere_of(index: usize, m: usize) -> SphereId {
    match index % (m + 1) {
        0 => SphereId::Outer,
        i => SphereId::Obstacle(i - 1),
    }
}

fn retraction() -> Outcome {
    let clock = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut worst_end = 0.0f64;
    let mut worst_half = 0.0f64;
    let mut pairs = 0;
    for (n, m) in world_grid() {
        let w: SphereWorld64 = random_world(&mut rng, n, m, R0);
        let atlas = match CollarAtlas64::with_default_widths(&w) {
            Ok(a) => a,
            Err(e) => return fail(format!("atlas: {e}")),
        };
        let mut points = Vec::with_capacity(RETRACT_POINTS);
        for i in 0..RETRACT_POINTS {
            let y = if i % 4 == 0 {
                let s = sphere_of(i / 4, m);
                let y = boundary_point(&mut rng, &w, s);
                let c = w.clearance_unchecked(&atlas.retract(&y).unwrap());
                worst_half = worst_half.max((c - 0.5 * atlas.width(s)).abs() / R0);
                y
            } else {
                free_point(&mut rng, &w)
            };
            if atlas.isotopy(&y, 0.0).unwrap() != atlas.retract(&y).unwrap() {
                return fail("H(y,0) differs from p(y)");
            }
            worst_end = worst_end.max(atlas.isotopy(&y, 1.0).unwrap().distance(&y) / R0);
            points.push(y);
        }
        let images: Vec<Point64> = points.iter().map(|y| atlas.retract(y).unwrap()).collect();
        // random pairs plus near pairs along the collar direction
        for _ in 0..INJECTIVITY_PAIRS / RETRACT_WORLDS / 2 {
            let (i, j) = (rng.gen_range(0..points.len()), rng.gen_range(0..points.len()));
            if points[i] != points[j] && images[i] == images[j] {
                return fail("retraction not injective on a random pair");
            }
            let y = &points[i];
            let z = y.scale(1.0 - rng.gen_range(1e-9..1e-6));
            if w.contains(&z).unwrap() && z != *y && atlas.retract(&z).unwrap() == images[i] {
                return fail("retraction not injective on a near pair");
            }
            pairs += 2;
        }
    }
    let took = clock.elapsed();
    let ok = worst_end <= ISOTOPY_END_TOL && worst_half <= HALF_WIDTH_TOL && took < RETRACT_BUDGET;
    check(
        ok,
        format!(
            "|H(y,1)-y| <= {worst_end:.1e} r0, boundary clearance w/2 +- {worst_half:.1e} r0, {pairs} pairs injective, {took:.2?}"
        ),
    )
}

/// Interior point at a log-uniform clearance from a random boundary sphere.
fn near_boundary(rng: &mut ChaCha8Rng, w: &SphereWorld64) -> Point64 {
    loop {
        let clearance = R0 * 10f64.powf(rng.gen_range(MIN_PROBED_CLEARANCE.log10()..0.0));
        let s = sphere_of(rng.gen_range(0..=w.obstacle_count()), w.obstacle_count());
        let u: Point64 = unit_vector(rng, w.dim());
        let p = match s {
            SphereId::Outer => u.scale(R0 - clearance),
            SphereId::Obstacle(i) => {
                let ob = &w.obstacles()[i];
                ob.center.add(&u.scale(ob.radius + clearance))
            }
        };
        if w.contains_interior(&p).unwrap() {
            return p;
        }
    }
}

fn homeomorphism() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    let mut worst = 0.0f64;
    let mut worst_seam = 0.0f64;
    let mut smallest = f64::INFINITY;
    for (n, m) in world_grid() {
        let w: SphereWorld64 = random_world(&mut rng, n, m, R0);
        let atlas = CollarAtlas64::with_default_widths(&w).unwrap();
        let pmap = PunctureMap64::from_atlas(&atlas).unwrap();
        for i in 0..ROUND_TRIP_POINTS {
            let p = if i % 2 == 0 { near_boundary(&mut rng, &w) } else { free_point(&mut rng, &w) };
            smallest = smallest.min(w.clearance_unchecked(&p));
            let back = match pmap.forward(&p).and_then(|y| pmap.inverse(&y)) {
                Ok(b) => b,
                Err(e) => return fail(format!("round trip failed: {e}")),
            };
            worst = worst.max(back.distance(&p) / R0);
        }
        for (ob, &big) in w.obstacles().iter().zip(pmap.influence_radii()) {
            for _ in 0..100 {
                let u: Point64 = unit_vector(&mut rng, n);
                let eps = 1e-15 * R0;
                let inside = pmap.collapse(&ob.center.add(&u.scale(big - eps)));
                let outside = pmap.collapse(&ob.center.add(&u.scale(big + eps)));
                worst_seam = worst_seam.max(inside.distance(&outside) / R0);
            }
        }
    }
    let probed_small = smallest <= 2.0 * MIN_PROBED_CLEARANCE * R0;
    check(
        worst <= ROUND_TRIP_TOL && worst_seam <= SEAM_TOL && probed_small,
        format!(
            "round trip <= {worst:.1e} r0 (min clearance {:.1e} r0), seam <= {worst_seam:.1e} r0",
            smallest / R0
        ),
    )
}

fn rule_counts() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    for k in 2..=5 {
        for (mode, want) in [(Mode::Strict, k * k), (Mode::Merged, 2 * k - 1)] {
            let p = Planner64::spread(2, k, mode).unwrap();
            if p.rule_count() != want {
                return fail(format!("{mode} k={k}: {} rules", p.rule_count()));
            }
            let witnesses = witness_pairs(&p).unwrap();
            for (id, a, b) in &witnesses {
                if p.rule_for(a, b).as_ref() != Ok(id) {
                    return fail(format!("witness for {id} fires another rule"));
                }
            }
            let pairs: Vec<_> = witnesses.into_iter().map(|(_, a, b)| (a, b)).collect();
            let census = rule_census(&p, &pairs).unwrap();
            if !census.unreached().is_empty() {
                return fail(format!("unreached rules {:?}", census.unreached()));
            }
        }
        if Planner64::spread(3, k, Mode::Merged).unwrap().rule_count() != tc_value(3, 0, k).unwrap() {
            return fail(format!("merged count differs from odd disk TC at k={k}"));
        }
        for n in [2, 3] {
            for m in [0, 1, 2] {
                let w: SphereWorld64 = random_world(&mut rng, n, m, R0);
                for mode in [Mode::Strict, Mode::Merged] {
                    let t = TransportedPlanner64::new(&w, k, mode, 0.2).unwrap();
                    if t.rule_count() != t.inner().rule_count() {
                        return fail("transport changed the rule count");
                    }
                    if t.rule_count() < tc_value(n, m, k).unwrap() {
                        return fail(format!("{mode} ({n},{m},{k}) below TC"));
                    }
                }
            }
        }
    }
    pass("k^2 strict / 2k-1 merged for k=2..5, every rule witnessed, counts >= TC in 24 spaces")
}

fn path_validity() -> Outcome {
    let clock = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let mut total = 0;
    let mut min_sep = f64::INFINITY;
    for (n, m) in [(2, 0), (2, 1), (2, 2), (3, 0), (3, 2)] {
        let w: SphereWorld64 = random_world(&mut rng, n, m, R0);
        let planners: Vec<_> =
            (1..=PATH_MAX_K).map(|k| TransportedPlanner64::new(&w, k, Mode::Strict, 0.2).unwrap()).collect();
        for i in 0..PATH_PAIRS {
            let k = 1 + i % PATH_MAX_K;
            let a = free_configuration(&mut rng, &w, k, 0.25);
            let b = free_configuration(&mut rng, &w, k, 0.25);
            let path = match planners[k - 1].plan(&a, &b, SamplingOptions::default()) {
                Ok(p) => p,
                Err(e) => return fail(format!("(n={n}, m={m}, k={k}) planner error: {e}")),
            };
            let r = validate_path(TargetSpace::World(&w), &path, Some(&a), Some(&b));
            if !r.valid {
                return fail(format!("(n={n}, m={m}, k={k}) {a:?} -> {b:?}: {:?}", r.failures));
            }
            min_sep = min_sep.min(r.min_separation);
            total += 1;
        }
    }
    let took = clock.elapsed();
    check(took < PATH_BUDGET, format!("{total} transported paths validator-clean (min separation {min_sep:.2e}) in {took:.1?}"))
}

fn swap_oracle() -> Outcome {
    let a = Configuration64::from_f64(&[vec![-1.0, 0.0], vec![1.0, 0.0]]).unwrap();
    let b = Configuration64::from_f64(&[vec![1.0, 0.0], vec![-1.0, 0.0]]).unwrap();
    // brute force over a grid containing t = 1/2
    let collision = (0..=1000).map(|j| j as f64 / 1000.0).find(|&t| a.lerp(&b, t).min_pair_distance() == 0.0);
    if collision != Some(0.5) {
        return fail(format!("straight line collision at {collision:?}"));
    }
    let planner = Planner64::spread(2, 2, Mode::Strict).unwrap();
    let path = planner.plan(&a, &b, SamplingOptions::default()).unwrap();
    let sep = path.samples().map(Configuration64::min_pair_distance).fold(f64::INFINITY, f64::min);
    let r = validate_path(TargetSpace::Punctured { dim: 2, punctures: &[] }, &path, Some(&a), Some(&b));
    let disk = SphereWorld64::disk(2, R0);
    let t = TransportedPlanner64::new(&disk, 2, Mode::Strict, 0.2).unwrap();
    let tpath = t.plan(&a, &b, SamplingOptions::default()).unwrap();
    let tr = validate_path(TargetSpace::World(&disk), &tpath, Some(&a), Some(&b));
    let merged = Planner64::spread(2, 2, Mode::Merged).unwrap().rule_count();
    check(
        r.valid && tr.valid && sep >= SWAP_SEPARATION * LANE_SPACING && merged == 3,
        format!("line collides at t=1/2; planner separation {sep:.3} >= {SWAP_SEPARATION} lanes; disk path valid; merged rules {merged}"),
    )
}

fn continuity() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for (n, k) in [(2, 2), (2, 3), (3, 3)] {
        let disk = SphereWorld64::disk(n, 1.0);
        let engine = Engine::World(TransportedPlanner64::new(&disk, k, Mode::Strict, 0.2).unwrap());
        let r = probe_continuity(&engine, ProbeOptions { trials: PROBE_TRIALS, delta: PROBE_DELTA, seed: 70 });
        let worst = r.rules.iter().map(|e| e.max_ratio).fold(0.0, f64::max);
        ok &= r.clean && !r.experimental && worst < LIPSCHITZ_LIMIT && !r.rules.is_empty();
        lines.push(format!("({n},{k}) max {worst:.1}"));
    }
    // reported only
    let merged = Engine::World(TransportedPlanner64::new(&SphereWorld64::disk(2, 1.0), 3, Mode::Merged, 0.2).unwrap());
    let rm = probe_continuity(&merged, ProbeOptions { trials: PROBE_TRIALS, delta: PROBE_DELTA, seed: 71 });
    let trade = rm.trade_offs.iter().map(|t| t.ratio).fold(0.0, f64::max);
    let world = SphereWorld64::new(2, R0, vec![Obstacle::new(Point64::new(vec![3.0, 0.0]), 1.0)]);
    let punct = Engine::World(TransportedPlanner64::new(&world, 2, Mode::Strict, 0.2).unwrap());
    let rp = probe_continuity(&punct, ProbeOptions { trials: PROBE_TRIALS, delta: PROBE_DELTA, seed: 72 });
    let worst_p = rp.rules.iter().map(|e| e.max_ratio).fold(0.0, f64::max);
    check(
        ok,
        format!(
            "strict {}; reported: merged experimental={} trade-off max {trade:.1e}, punctured experimental={} max {worst_p:.1}",
            lines.join(", "),
            rm.experimental,
            rp.experimental
        ),
    )
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_sphereworld-mp")
}

fn run_cli(args: &[&str], seed: Option<&str>) -> i32 {
    let mut cmd = Command::new(bin());
    cmd.args(args).env_remove("SPHEREWORLD_MP_SEED");
    if let Some(s) = seed {
        cmd.env("SPHEREWORLD_MP_SEED", s);
    }
    cmd.output().expect("binary runs").status.code().unwrap_or(-1)
}

fn determinism(dir: &Path) -> Outcome {
    let scenarios = [
        ("fixed", r#"{"world":{"n":2,"r0":10.0,"obstacles":[{"center":[-4,0],"radius":1.5},{"center":[4,1],"radius":2}]},"k":3,"start":[[0,0],[1,0],[9.99,0]],"goal":[[1,0],[0,0],[0,-10]]}"#),
        ("random", r#"{"world":{"n":2,"r0":5.0,"obstacles":[{"center":[1,1],"radius":1}]},"k":4,"seed":9,"mode":"merged"}"#),
        ("euclid", r#"{"euclidean":{"n":2,"punctures":[[0,0],[1,1]]},"k":3,"seed":2}"#),
    ];
    for (name, text) in scenarios {
        let file = dir.join(format!("{name}.json"));
        fs::write(&file, text).unwrap();
        let file = file.to_str().unwrap();
        let mut runs = Vec::new();
        for run in 0..2 {
            let out = dir.join(format!("{name}-{run}"));
            let out = out.to_str().unwrap();
            if run_cli(&["plan", "--scenario", file, "--out", out], Some("7")) != 0
                || run_cli(&["render", "--scenario", file, "--out", out], Some("7")) != 0
            {
                return fail(format!("{name}: run failed"));
            }
            let bytes: Vec<Vec<u8>> = ["path.json", "report.json", "scene.svg"]
                .iter()
                .map(|f| fs::read(Path::new(out).join(f)).unwrap())
                .collect();
            runs.push(bytes);
        }
        if runs[0] != runs[1] {
            return fail(format!("{name}: outputs differ between runs"));
        }
    }
    let random = dir.join("random.json");
    let random = random.to_str().unwrap();
    let out = dir.join("random-override");
    let out = out.to_str().unwrap();
    if run_cli(&["plan", "--scenario", random, "--out", out], Some("8")) != 0 {
        return fail("override run failed");
    }
    let other = fs::read(Path::new(out).join("path.json")).unwrap();
    if other == fs::read(dir.join("random-0/path.json")).unwrap() {
        return fail("seed override did not change the random endpoints");
    }
    pass("path.json, report.json and scene.svg byte-identical across repeated runs; seed override honoured")
}

fn seg(rule: &str, t0: f64, t1: f64, samples: Vec<Configuration64>) -> Segment<f64> {
    Segment { rule_id: rule.into(), phase: "test".into(), t0, t1, samples }
}

fn cfg(points: &[&[f64]]) -> Configuration64 {
    Configuration64::from_points(points.iter().map(|p| Point64::new(p.to_vec())).collect())
}

fn line(a: &Configuration64, b: &Configuration64, samples: usize) -> PiecewisePath64 {
    let s = (0..samples).map(|j| a.lerp(b, j as f64 / (samples - 1) as f64)).collect();
    PiecewisePath64 { segments: vec![seg("line", 0.0, 1.0, s)] }
}

/// Twenty hand-built bad paths, each rejected, and straight lines that are
/// accepted.
fn validator_library() -> Outcome {
    let world = SphereWorld64::new(2, R0, vec![Obstacle::new(Point64::new(vec![4.0, 0.0]), 1.0)]);
    let q = [Point64::new(vec![0.0, 0.0])];
    let ws = TargetSpace::World(&world);
    let ps = TargetSpace::Punctured { dim: 2, punctures: &q };
    let a = cfg(&[&[-1.0, 0.0], &[1.0, 0.0]]);
    let b = cfg(&[&[1.0, 0.0], &[-1.0, 0.0]]);
    let up = cfg(&[&[-1.0, 2.0], &[1.0, 2.0]]);
    let single = |p: &[f64]| cfg(&[p]);
    let two = |x: PiecewisePath64| x;

    let mut bad: Vec<(&str, TargetSpace<f64>, PiecewisePath64)> = vec![
        ("midpoint collision", ws, line(&a, &b, 11)),
        ("coincident robots", ws, two(line(&cfg(&[&[0.0, 0.0], &[0.0, 0.0]]), &up, 5))),
        ("grazes obstacle", ws, line(&single(&[2.0, 1.0]), &single(&[6.0, 1.0]), 9)),
        ("enters obstacle", ws, line(&single(&[2.0, 0.5]), &single(&[6.0, 0.5]), 65)),
        ("leaves workspace", ws, line(&single(&[9.0, 0.0]), &single(&[9.0, 5.0]), 65)),
        (
            "interior sample on outer wall",
            ws,
            PiecewisePath64 {
                segments: vec![seg(
                    "line",
                    0.0,
                    1.0,
                    vec![single(&[9.99, 0.0]), single(&[10.0, 0.0]), single(&[9.99, 0.001])],
                )],
            },
        ),
        // the guard is relative to robot separation, so jumps need two robots
        ("teleport", ws, line(&cfg(&[&[-5.0, 0.0], &[-5.0, 1.0]]), &cfg(&[&[0.0, 5.0], &[0.0, 6.0]]), 2)),
        ("jumps over obstacle", ws, line(&cfg(&[&[2.0, 0.0], &[2.0, 2.0]]), &cfg(&[&[6.0, 0.0], &[6.0, 2.0]]), 2)),
        ("robots cross between samples", ws, line(&a, &b, 4)),
        ("hits a puncture", ps, line(&single(&[-1.0, 0.0]), &single(&[1.0, 0.0]), 3)),
        ("puncture collision pair", ps, line(&a, &b, 3)),
    ];
    let good_line = line(&a, &up, 33);
    let mut broken_join = good_line.clone();
    let extra = seg("line", 1.0, 2.0, vec![a.clone(), up.clone()]);
    broken_join.segments.push(extra);
    bad.push(("join does not match", ws, broken_join));
    let mut time_gap = line(&a, &up, 33);
    time_gap.segments.push(seg("line", 1.5, 2.0, vec![up.clone(), up.clone()]));
    bad.push(("join times differ", ws, time_gap));
    let mut nan = good_line.clone();
    nan.segments[0].samples[5] = cfg(&[&[f64::NAN, 0.0], &[1.0, 0.0]]);
    bad.push(("NaN sample", ws, nan));
    let mut inf = good_line.clone();
    inf.segments[0].samples[5] = cfg(&[&[f64::INFINITY, 0.0], &[1.0, 0.0]]);
    bad.push(("infinite sample", ws, inf));
    let mut dim = good_line.clone();
    dim.segments[0].samples[5] = cfg(&[&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0]]);
    bad.push(("wrong dimension", ws, dim));
    let mut count = good_line.clone();
    count.segments[0].samples[5] = cfg(&[&[0.0, 1.0]]);
    bad.push(("robot count changes", ws, count));
    bad.push(("empty path", ws, PiecewisePath64::default()));
    bad.push(("one-sample segment", ws, PiecewisePath64 { segments: vec![seg("line", 0.0, 1.0, vec![a.clone()])] }));

    let mut rejected = 0;
    for (name, space, path) in &bad {
        if validate_path(*space, path, None, None).valid {
            return fail(format!("accepted bad path: {name}"));
        }
        rejected += 1;
    }
    // wrong endpoint: a fine path checked against another goal
    if validate_path(ws, &good_line, Some(&a), Some(&b)).valid {
        return fail("accepted wrong goal");
    }
    rejected += 1;

    let goods = [
        (ws, line(&a, &up, 33), a.clone(), up.clone()),
        (ws, line(&single(&[-5.0, -5.0]), &single(&[-5.0, 5.0]), 17), single(&[-5.0, -5.0]), single(&[-5.0, 5.0])),
        (ps, line(&cfg(&[&[1.0, 1.0], &[2.0, 1.0]]), &cfg(&[&[1.0, 3.0], &[2.0, 3.0]]), 9), cfg(&[&[1.0, 1.0], &[2.0, 1.0]]), cfg(&[&[1.0, 3.0], &[2.0, 3.0]])),
        (ws, line(&single(&[10.0, 0.0]), &single(&[8.0, 0.0]), 9), single(&[10.0, 0.0]), single(&[8.0, 0.0])),
    ];
    for (space, path, s, g) in &goods {
        let r = validate_path(*space, path, Some(s), Some(g));
        if !r.valid {
            return fail(format!("rejected good path: {:?}", r.failures));
        }
    }
    check(rejected == 20, format!("{rejected} bad paths rejected, {} straight-line paths accepted", goods.len()))
}

fn exit_codes(dir: &Path) -> Outcome {
    let write = |name: &str, text: &str| {
        let p = dir.join(name);
        fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    };
    let ok = write("ok.json", r#"{"world":{"n":2,"r0":10.0},"k":2,"start":[[0,0],[1,0]],"goal":[[1,0],[0,0]]}"#);
    let bad_world = write("w.json", r#"{"world":{"n":2,"r0":10.0,"obstacles":[{"center":[1,0],"radius":1},{"center":[2,0],"radius":1}]},"k":2,"seed":1}"#);
    let bad_cfg = write("c.json", r#"{"world":{"n":2,"r0":10.0},"k":2,"start":[[0,0],[0,0]],"goal":[[1,0],[0,0]]}"#);
    let planner = write("p.json", r#"{"world":{"n":2,"r0":10.0,"obstacles":[{"center":[1,0],"radius":1}]},"k":11,"seed":1}"#);
    let bad_path = write("bad_path.json", r#"{"segments":[{"rule_id":"x","t0":0,"t1":1,"samples":[[[0,0],[1,0]],[[1,0],[0,0]]]}]}"#);
    let garbage = write("garbage.json", "{ not json");
    let cases: [(&str, Vec<&str>, i32); 6] = [
        ("valid", vec!["plan", "--scenario", &ok], 0),
        ("invalid world", vec!["plan", "--scenario", &bad_world], 1),
        ("invalid configuration", vec!["plan", "--scenario", &bad_cfg], 2),
        ("planner error", vec!["plan", "--scenario", &planner], 3),
        ("validation failure", vec!["validate", "--scenario", &ok, "--path", &bad_path], 4),
        ("unparseable scenario", vec!["plan", "--scenario", &garbage], 5),
    ];
    for (name, args, want) in &cases {
        let got = run_cli(args, None);
        if got != *want {
            return fail(format!("{name}: exit {got}, expected {want}"));
        }
    }
    pass("exit codes 0/1/2/3/4 (+5 for unreadable input) as specified")
}

fn main() {
    let tmp = tempfile::tempdir().expect("temp dir");
    type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("1 tc formula table", Box::new(tc_table)),
        ("2 retraction identities", Box::new(retraction)),
        ("3 homeomorphism round trip", Box::new(homeomorphism)),
        ("4 planner rule counts", Box::new(rule_counts)),
        ("5 path validity", Box::new(path_validity)),
        ("6 swap oracle", Box::new(swap_oracle)),
        ("7 continuity probes", Box::new(continuity)),
        ("8 determinism", Box::new(|| determinism(tmp.path()))),
        ("validator soundness", Box::new(validator_library)),
        ("exit-code contract", Box::new(|| exit_codes(tmp.path()))),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let clock = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| fail("panicked"));
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("{tag} [{name}] {} ({:.1?})", outcome.detail, clock.elapsed());
        failed += usize::from(!outcome.pass);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

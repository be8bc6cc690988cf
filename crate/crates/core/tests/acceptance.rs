//! End-to-end acceptance checks. Each criterion prints one PASS or FAIL line with its
//! runtime and budget; the test fails if any criterion fails.

mod common;

use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use torloc::applications::{
    chern_number, mixed_volume_fit, mixed_volume_lattice_points, mixed_volume_loc, resolve_klyachko, Partition,
    PolytopeSystem,
};
use torloc::cli::io;
use torloc::fixtures;
use torloc::lattice::{int, rat, Index, LatticeVector};
use torloc::localization::{e_sigma, iota_star, iota_star_image, picard_rank, ranks_table};
use torloc::polyalg::{Polynomial, RationalFunctionLF};
use torloc::polyhedra::{Fan, LatticePolytope};

type Outcome = Result<String, String>;

/// A named check with its runtime budget.
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// `num / prod forms` with integral linear forms.
fn rational(n: usize, num: Polynomial, forms: &[&[i64]]) -> RationalFunctionLF {
    let factors: Vec<(Vec<_>, u32)> = forms.iter().map(|f| (f.iter().map(|&x| int(x)).collect(), 1)).collect();
    RationalFunctionLF::new(num, &factors)
        .inspect(|r| {
            assert_eq!(r.nvars(), n);
        })
        .unwrap()
}

/// Exact equality, also confirmed by evaluation at seeded rational points.
fn same(a: &RationalFunctionLF, b: &RationalFunctionLF) -> bool {
    a.sub(b).is_zero() && a.equals_by_evaluation(b, common::SEED, 5)
}

fn mod_z2() -> Outcome {
    let fan = fixtures::mod_z2();
    let plus = rational(2, Polynomial::constant(2, rat(2, 1)), &[&[1, -1], &[1, 1]]);
    let signs = [1, -1, 1, -1];
    for (i, s) in signs.iter().enumerate() {
        let e = e_sigma(&fan.maximal_cones()[i]).map_err(fail)?;
        let want = if *s > 0 { plus.clone() } else { plus.neg() };
        check(same(&e, &want), || format!("e(sigma_{}) = {e}, expected {want}", i + 1))?;
    }
    let f = io::parse_piecewise(&fixture("mod_z2_pp.json"), &fan).map_err(fail)?;
    let w = iota_star(&fan, &f).map_err(fail)?;
    check(w.values() == [int(2)], || format!("f maps to {:?}", w.values()))?;
    let image = iota_star_image(&fan, 2).map_err(fail)?;
    check(image.index == Index::Finite(int(2)), || format!("image index {:?}", image.index))?;
    Ok("e = +-2/(a^2-b^2), f maps to 2, image index 2".into())
}

fn rank_tables() -> Outcome {
    let cases: [(&str, Fan, [[usize; 4]; 3]); 3] = [
        ("cube", fixtures::cube(), [[1, 4, 11, 23], [0, 3, 9, 22], [1, 1, 5, 1]]),
        ("Fulton", fixtures::fulton(), [[1, 3, 8, 20], [0, 3, 6, 16], [1, 0, 5, 1]]),
        ("final threefold", fixtures::final_threefold(), [[1, 4, 10, 22], [0, 3, 9, 19], [1, 1, 5, 1]]),
    ];
    for (name, fan, want) in cases {
        let rows = ranks_table(&fan, 3).map_err(fail)?;
        let got = [
            rows.iter().map(|r| r.pp).collect::<Vec<_>>(),
            rows.iter().map(|r| r.m_pp).collect(),
            rows.iter().map(|r| r.mw).collect(),
        ];
        check(got.iter().zip(&want).all(|(g, w)| g == w), || format!("{name}: {got:?}, expected {want:?}"))?;
    }
    Ok("36 of 36 entries match".into())
}

fn bott_residue() -> Outcome {
    let fan = fixtures::cube();
    let bundle = fixtures::cube_bundle();
    let e1 =
        rational(3, Polynomial::linear(&[int(4), int(0), int(0)]), &[&[-1, 1, 0], &[1, 1, 0], &[-1, 0, 1], &[1, 0, 1]]);
    let got1 = e_sigma(&fan.maximal_cones()[0]).map_err(fail)?;
    let got6 = e_sigma(&fan.maximal_cones()[5]).map_err(fail)?;
    check(same(&got1, &e1), || format!("e(sigma_1) = {got1}"))?;
    check(same(&got6, &e1.neg()), || format!("e(sigma_6) = {got6}"))?;
    for (lambda, want) in [("111", 64), ("21", 32)] {
        let c = chern_number(&fan, &bundle, &Partition::parse(lambda).map_err(fail)?).map_err(fail)?;
        check(c == int(want), || format!("c_{lambda} = {c}, expected {want}"))?;
    }
    let printed: [[[i64; 3]; 2]; 6] = [
        [[1, 1, 1], [1, -1, -1]],
        [[1, 1, 1], [-1, 1, -1]],
        [[1, 1, 1], [-1, -1, 1]],
        [[1, -1, -1], [-1, 1, -1]],
        [[1, -1, -1], [-1, -1, 1]],
        [[-1, 1, -1], [-1, -1, 1]],
    ];
    for (i, us) in printed.iter().enumerate() {
        let mut want: Vec<LatticeVector> = us.iter().map(|u| LatticeVector::from_i64(u)).collect();
        want.sort();
        let got = resolve_klyachko(&bundle, &fan, i).map_err(fail)?;
        check(got == want, || format!("u(sigma_{}) = {got:?}", i + 1))?;
    }
    Ok("e(sigma_1) = -e(sigma_6) = 4a/((b^2-a^2)(c^2-a^2)), c111 = 64, c21 = 32, six u(sigma) match".into())
}

fn three_way(ps: &[LatticePolytope]) -> Result<torloc::lattice::Int, String> {
    let sys = PolytopeSystem::new(ps.to_vec()).map_err(fail)?;
    let a = mixed_volume_loc(&sys).map_err(fail)?;
    let b = mixed_volume_lattice_points(ps).map_err(fail)?;
    let c = mixed_volume_fit(ps).map_err(fail)?;
    check(a == b && b == c, || format!("{} / {} / {}", a.normalized, b.normalized, c.normalized))?;
    Ok(a.normalized)
}

fn mixed_volumes() -> Outcome {
    let mut values = Vec::new();
    for name in ["segments.json", "squares.json", "triangles.json"] {
        let ps = io::parse_polytopes(&fixture(name)).map_err(fail)?;
        values.push(three_way(&ps).map_err(|e| format!("{name}: {e}"))?.to_string());
    }
    const RANDOM: u64 = 60;
    for seed in 0..RANDOM {
        let mut r = common::rng(seed ^ 0x41);
        let n = 2 + (seed % 2) as usize;
        let ps = common::random_polytope_system(&mut r, n, 3);
        three_way(&ps).map_err(|e| format!("random system {seed}: {e}"))?;
    }
    Ok(format!("fixtures n!V = {}, plus {RANDOM} random systems", values.join(", ")))
}

fn properties() -> Outcome {
    const INSTANCES: u64 = 24;
    for (name, prop) in common::props::ALL {
        for seed in 0..INSTANCES {
            prop(common::SEED + seed).map_err(|e| format!("{name}, seed {seed}: {e}"))?;
        }
    }
    Ok(format!("{} properties, {INSTANCES} instances each", common::props::ALL.len()))
}

fn picard() -> Outcome {
    for (name, fan, want) in [
        ("Fulton", fixtures::fulton(), 0),
        ("cube", fixtures::cube(), 1),
        ("final threefold", fixtures::final_threefold(), 1),
    ] {
        let p = picard_rank(&fan).map_err(fail)?;
        check(p == want, || format!("{name}: {p}, expected {want}"))?;
    }
    Ok("0 / 1 / 1".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 6] = [
        ("1 mod Z2 example", mod_z2, Duration::from_secs(1)),
        ("2 rank tables", rank_tables, Duration::from_secs(60)),
        ("3 Bott residue on the cube", bott_residue, Duration::from_secs(5)),
        ("4 mixed volume agreement", mixed_volumes, Duration::from_secs(120)),
        ("5 property suite", properties, Duration::MAX),
        ("6 Picard ranks", picard, Duration::MAX),
    ];
    let mut failed = Vec::new();
    // Written past the test harness capture so that the lines always show.
    let mut out = std::io::stdout().lock();
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed >= budget => Err(format!("{msg}, but over the {budget:?} budget")),
            other => other,
        };
        let budget = if budget == Duration::MAX { String::new() } else { format!(" of {budget:?}") };
        let line = match &outcome {
            Ok(msg) => format!("PASS  {name}  ({elapsed:.2?}{budget})  {msg}"),
            Err(msg) => format!("FAIL  {name}  ({elapsed:.2?}{budget})  {msg}"),
        };
        writeln!(out, "{line}").unwrap();
        if outcome.is_err() {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

//! Acceptance criteria 1 to 9. Runs as a plain binary so that every
//! criterion prints its PASS/FAIL line; exits nonzero if any fails.

use std::time::{Duration, Instant};

use tauhh::bqa::{build_algebra, center, Algebra, Presentation, SubBimodule, DEFAULT_LENGTH_CAP};
use tauhh::closed_forms::{
    crown_dims, hereditary_hh1, monomial_classification, monomial_dims, rad_square_zero_dims, tree_theorem_check,
};
use tauhh::cohomology::{
    bar_complex, excess, has_hh2_cancellation, hh1_dim, hh1_kq_dim, hh2_dim, hom_relations_dim,
    tau_hh1_dim_coker, tau_hh1_dim_formula, DEFAULT_BAR_CAP,
};
use tauhh::linalg::Field;
use tauhh::quiver::{classify_shape, parse_presentation, Quiver};
use tauhh::selfcheck::{Bounds, Sampler};
use tauhh::Error;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn alg(p: &Presentation) -> Result<Algebra, String> {
    build_algebra(p, DEFAULT_LENGTH_CAP).map_err(|e| format!("build failed: {e}"))
}

fn ok<T>(r: tauhh::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Adjacency matrix `A[s][t]` = number of arrows `s → t`.
fn adjacency(q: &Quiver) -> Vec<Vec<usize>> {
    let n = q.num_vertices();
    let mut a = vec![vec![0; n]; n];
    for arrow in q.arrows() {
        a[arrow.source][arrow.target] += 1;
    }
    a
}

fn mat_mul(x: &[Vec<usize>], y: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = x.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum()).collect()).collect()
}

/// Independent hereditary oracle: `1 − |Q0| + Σ_a #paths s(a) → t(a)`,
/// with path counts from powers of the adjacency matrix.
fn hereditary_oracle(q: &Quiver) -> usize {
    let a = adjacency(q);
    let n = a.len();
    let mut total: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| usize::from(i == j)).collect()).collect();
    let mut power = total.clone();
    for _ in 0..n {
        power = mat_mul(&power, &a);
        for i in 0..n {
            for j in 0..n {
                total[i][j] += power[i][j];
            }
        }
    }
    let parallel: usize = q.arrows().iter().map(|x| total[x.source][x.target]).sum();
    1 + parallel - n
}

/// `(|Q1//Q0|, |Q1//Q1|, |Q2//Q1|)` from the adjacency matrix.
fn rad2_counts(q: &Quiver) -> (i64, i64, i64) {
    let a = adjacency(q);
    let a2 = mat_mul(&a, &a);
    let n = a.len();
    let (mut n10, mut n11, mut n21) = (0, 0, 0);
    for s in 0..n {
        n10 += a[s][s];
        for t in 0..n {
            n11 += a[s][t] * a[s][t];
            n21 += a2[s][t] * a[s][t];
        }
    }
    (n10 as i64, n11 as i64, n21 as i64)
}

/// Bar complex dims `[HH0, HH1, HH2]` with `δ² = 0` checked, or `None`
/// above the cap.
fn bar_dims(a: &Algebra) -> Result<Option<[usize; 3]>, String> {
    match bar_complex(a, &SubBimodule::whole(a), 3, DEFAULT_BAR_CAP) {
        Ok(c) => {
            ensure!(c.squares_to_zero(), "δ² ≠ 0");
            Ok(Some([c.cohomology_dim(0), c.cohomology_dim(1), c.cohomology_dim(2)]))
        }
        Err(Error::ComplexTooLarge { .. }) => Ok(None),
        Err(e) => Err(e.to_string()),
    }
}

fn criterion_1() -> Outcome {
    const R: &str = "field Q\nvertices 1 2 3 4\narrow a 1 2\narrow b 2 3\narrow c 3 4\narrow d 2 4\nrelations\n";
    let cases = [
        ("field Q\nvertices 1 2 3\narrow a 1 2\narrow b 1 2\narrow c 2 3\nrelations\nc*a\n".to_string(), (1, 2, 3), vec!["(a,b)"]),
        (format!("{R}b*a\n"), (0, 2, 2), vec![]),
        (format!("{R}d*a\n"), (1, 1, 2), vec!["(d,cb)"]),
    ];
    let mut slowest = Duration::ZERO;
    for (text, expected, nu) in cases {
        let start = Instant::now();
        let p = ok(parse_presentation(&text))?;
        let a = alg(&p)?;
        let got = (ok(excess(&a))?, hh1_dim(&a), tau_hh1_dim_formula(&a));
        let c = ok(monomial_classification(&p))?;
        let got_nu: Vec<String> = c.nu.iter().map(|x| x.render(p.quiver())).collect();
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        ensure!(got == expected, "(e, HH1, tauHH1) = {got:?}, expected {expected:?}");
        ensure!(got_nu == nu, "(Q1//B)_nu = {got_nu:?}, expected {nu:?}");
        ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    }
    Ok(format!("3 presentations, slowest {slowest:?}"))
}

fn criterion_2() -> Outcome {
    for c in 1..=5 {
        for field in [Field::Rational, Field::Prime(2)] {
            let char2 = field == Field::Prime(2);
            let expected = (if c == 1 { 2 } else { 1 }, if c == 1 && char2 { 2 } else { 1 }, usize::from(c == 1 && !char2));
            let closed = crown_dims(c, field.characteristic());
            let a = alg(&Sampler::crown_of(c, field))?;
            ensure!(classify_shape(a.quiver()).crown_order == c, "generated quiver is not the {c}-crown");
            let general = (tau_hh1_dim_formula(&a), hh1_dim(&a), ok(excess(&a))?);
            ensure!((closed.tau_hh1, closed.hh1, closed.excess) == expected, "closed form {closed:?} for c={c} {field:?}");
            ensure!(general == expected, "general {general:?}, expected {expected:?} for c={c} {field:?}");
        }
    }
    Ok("c = 1..5 over Q and F_2".into())
}

fn criterion_3(inputs: &mut Vec<Algebra>) -> Outcome {
    let start = Instant::now();
    let mut sampler = Sampler::new(3);
    let bounds = Bounds { max_vertices: 6, max_arrows: 8 };
    for i in 0..100 {
        let p = sampler.hereditary(bounds, Field::Rational);
        let q = p.quiver();
        let a = alg(&p)?;
        let oracle = hereditary_oracle(q);
        let (closed, general) = (ok(hereditary_hh1(q))?, hh1_dim(&a));
        ensure!(closed == oracle && general == oracle, "#{i}: closed {closed}, general {general}, oracle {oracle}");
        ensure!(ok(excess(&a))? == 0, "#{i}: nonzero excess");
        ensure!(ok(has_hh2_cancellation(&a, DEFAULT_BAR_CAP))?, "#{i}: no HH2 cancellation");
        inputs.push(a);
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!("100 quivers in {elapsed:?}"))
}

fn criterion_4(inputs: &mut Vec<Algebra>) -> Outcome {
    let mut sampler = Sampler::new(4);
    let bounds = Bounds { max_vertices: 5, max_arrows: 7 };
    let mut with_q2q1 = 0;
    for i in 0..100 {
        let p = sampler.radical_square_zero(bounds, Field::Rational);
        let q = p.quiver();
        ensure!(classify_shape(q).crown_order == 0 && classify_shape(q).connected, "#{i}: bad shape");
        let a = alg(&p)?;
        let (n10, n11, n21) = rad2_counts(q);
        let n0 = q.num_vertices() as i64;
        let closed = ok(rad_square_zero_dims(q))?;
        let general = (ok(excess(&a))? as i64, hh1_dim(&a) as i64, ok(hh2_dim(&a))? as i64);
        let oracle = (n10, 1 - n0 + n11, n21 - n10);
        ensure!((closed.excess, closed.hh1, closed.hh2) == oracle, "#{i}: closed {closed:?}, oracle {oracle:?}");
        ensure!(general == oracle, "#{i}: general {general:?}, oracle {oracle:?}");
        let cancellation = ok(has_hh2_cancellation(&a, DEFAULT_BAR_CAP))?;
        ensure!(cancellation == (n21 == 0) && closed.cancellation == cancellation, "#{i}: cancellation {cancellation}");
        with_q2q1 += usize::from(n21 > 0);
        inputs.push(a);
    }
    Ok(format!("100 quivers, {with_q2q1} with Q2//Q1 nonempty"))
}

fn general_presentations() -> Vec<Presentation> {
    let mut sampler = Sampler::new(5);
    (0..200)
        .map(|_| {
            let f = sampler.field();
            sampler.general(Bounds::default(), f)
        })
        .collect()
}

fn criterion_5(presentations: &[Presentation], inputs: &mut Vec<Algebra>) -> Outcome {
    let (mut monomial, mut fields) = (0, [0usize; 3]);
    for (i, p) in presentations.iter().enumerate() {
        let a = alg(p)?;
        let routes = (tau_hh1_dim_formula(&a), tau_hh1_dim_coker(&a), hh1_kq_dim(&a));
        ensure!(routes.0 == routes.1 && routes.1 == routes.2, "#{i}: routes {routes:?}");
        monomial += usize::from(p.is_monomial());
        fields[match p.field() {
            Field::Rational => 0,
            Field::Prime(2) => 1,
            _ => 2,
        }] += 1;
        inputs.push(a);
    }
    ensure!(monomial > 0 && monomial < presentations.len(), "coverage: {monomial} monomial");
    ensure!(fields.iter().all(|&n| n > 0), "field coverage {fields:?}");
    Ok(format!("200 presentations, {monomial} monomial, Q/F_2/F_3 = {fields:?}"))
}

fn criterion_6(algebras: &[Algebra]) -> Outcome {
    let mut with_bar = 0;
    for (i, a) in algebras.iter().enumerate() {
        let (hh1, kq, hom) = (hh1_dim(a) as i64, hh1_kq_dim(a) as i64, ok(hom_relations_dim(a))? as i64);
        let hh2 = match bar_dims(a)? {
            Some(d) => {
                with_bar += 1;
                d[2] as i64
            }
            None => ok(hh2_dim(a))? as i64,
        };
        ensure!(hh1 - kq + hom - hh2 == 0, "#{i}: alternating sum {}", hh1 - kq + hom - hh2);
        let e = ok(excess(a))?;
        ensure!(e as i64 == kq - hh1 && e as i64 == hom - hh2, "#{i}: excess routes");
    }
    Ok(format!("{} presentations, {with_bar} with bar HH2", algebras.len()))
}

fn criterion_7(inputs: &[Algebra]) -> Outcome {
    let mut checked = 0;
    for (i, a) in inputs.iter().enumerate() {
        if let Some([h0, h1, h2]) = bar_dims(a)? {
            ensure!(h0 == center(a).rank(), "#{i}: bar HH0 {h0}");
            ensure!(h1 == hh1_dim(a), "#{i}: bar HH1 {h1}");
            ensure!(h2 == ok(hh2_dim(a))?, "#{i}: bar HH2 {h2}");
            checked += 1;
        }
    }
    Ok(format!("{checked} of {} inputs within the cap", inputs.len()))
}

fn criterion_8(inputs: &mut Vec<Algebra>) -> Outcome {
    let mut sampler = Sampler::new(8);
    let mut trees = 0;
    for i in 0..50 {
        let f = sampler.field();
        let p = sampler.triangular_monomial(Bounds { max_vertices: 5, max_arrows: 6 }, f);
        let t = ok(tree_theorem_check(&p))?;
        ensure!(t.consistent(), "#{i}: {t:?}");
        if t.is_tree {
            trees += 1;
            ensure!(t.hh1_zero && t.tau_hh1_zero, "#{i}: tree but {t:?}");
        }
        let d = ok(monomial_dims(&p))?;
        let a = alg(&p)?;
        ensure!(d.tau_hh1 == tau_hh1_dim_formula(&a) && d.hh1 == hh1_dim(&a), "#{i}: closed forms {d:?}");
        inputs.push(a);
    }
    ensure!(trees > 0 && trees < 50, "coverage: {trees} trees");
    Ok(format!("50 presentations, {trees} trees"))
}

fn criterion_9(inputs: &[Algebra]) -> Outcome {
    let mut rigid = 0;
    for (i, a) in inputs.iter().enumerate() {
        let hh2 = match bar_dims(a)? {
            Some(d) => d[2],
            None => ok(hh2_dim(a))?,
        };
        let left = tau_hh1_dim_formula(a) == 0;
        let right = hh1_dim(a) == 0 && hh2 == ok(hom_relations_dim(a))?;
        ensure!(left == right, "#{i}: tauHH1 = 0 is {left}, other side {right}");
        rigid += usize::from(left);
    }
    Ok(format!("{} inputs, {rigid} tau-rigid", inputs.len()))
}

fn main() {
    let mut inputs = Vec::new();
    let general = general_presentations();
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    results.push((1, "example table", criterion_1()));
    results.push((2, "crowns", criterion_2()));
    results.push((3, "hereditary", criterion_3(&mut inputs)));
    results.push((4, "radical square zero", criterion_4(&mut inputs)));
    let mut general_algebras = Vec::new();
    results.push((5, "three tauHH1 routes", criterion_5(&general, &mut general_algebras)));
    results.push((6, "exact sequence and excess", criterion_6(&general_algebras)));
    inputs.extend(general_algebras);
    results.push((8, "tree theorem", criterion_8(&mut inputs)));
    results.push((7, "bar complex oracle", criterion_7(&inputs)));
    results.push((9, "tau-rigidity", criterion_9(&inputs)));
    results.sort_by_key(|r| r.0);

    let mut failed = 0;
    for (n, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {n} PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n} FAIL  {name}: {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", results.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", results.len());
}

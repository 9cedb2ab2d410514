//! Seeded random presentations and a self-check harness that runs every
//! route comparison and closed form on them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bqa::{build_algebra, Presentation, DEFAULT_LENGTH_CAP};
use crate::closed_forms::{cross_validate_report, tree_theorem_check};
use crate::cohomology::{compute_report, ComputeOptions, InvariantReport};
use crate::linalg::Field;
use crate::quiver::{classify_shape, enumerate_paths, Path, Quiver};

/// Size limits for generated quivers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_vertices: usize,
    pub max_arrows: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds { max_vertices: 4, max_arrows: 5 }
    }
}

/// The kind of presentation a generator produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Hereditary,
    RadicalSquareZero,
    Crown,
    TriangularMonomial,
    General,
}

impl Kind {
    pub const ALL: [Kind; 5] =
        [Kind::Hereditary, Kind::RadicalSquareZero, Kind::Crown, Kind::TriangularMonomial, Kind::General];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Hereditary => "hereditary",
            Kind::RadicalSquareZero => "radical square zero",
            Kind::Crown => "crown",
            Kind::TriangularMonomial => "triangular monomial",
            Kind::General => "general",
        }
    }
}

fn arrow_name(i: usize) -> String {
    let letter = (b'a' + (i % 26) as u8) as char;
    if i < 26 {
        letter.to_string()
    } else {
        format!("{letter}{}", i / 26)
    }
}

fn make_quiver(n: usize, arrows: &[(usize, usize)]) -> Quiver {
    let vertices = (1..=n).map(|v| v.to_string()).collect();
    let arrows = arrows.iter().enumerate().map(|(i, &(s, t))| (arrow_name(i), s, t)).collect();
    Quiver::new(vertices, arrows).expect("generated names are distinct")
}

/// Deterministic source of random presentations.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// One of `Q`, `F_2`, `F_3`.
    pub fn field(&mut self) -> Field {
        [Field::Rational, Field::Prime(2), Field::Prime(3)][self.rng.gen_range(0..3)]
    }

    /// A connected quiver: a random spanning tree plus extra arrows. With
    /// `acyclic`, arrows follow a random vertex order and loops are excluded.
    pub fn connected_quiver(&mut self, bounds: Bounds, acyclic: bool) -> Quiver {
        let n = self.rng.gen_range(1..=bounds.max_vertices.max(1));
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut self.rng);
        let mut rank = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        let orient = |rng: &mut ChaCha8Rng, u: usize, v: usize| {
            if acyclic {
                if rank[u] < rank[v] { (u, v) } else { (v, u) }
            } else if rng.gen_bool(0.5) {
                (u, v)
            } else {
                (v, u)
            }
        };
        let mut arrows = Vec::new();
        for v in 1..n {
            let u = self.rng.gen_range(0..v);
            arrows.push(orient(&mut self.rng, u, v));
        }
        let cap = bounds.max_arrows.max(n - 1);
        let total = self.rng.gen_range(n - 1..=cap);
        while arrows.len() < total {
            let (s, t) = (self.rng.gen_range(0..n), self.rng.gen_range(0..n));
            if acyclic && s == t {
                if n == 1 {
                    break;
                }
                continue;
            }
            arrows.push(orient(&mut self.rng, s, t));
        }
        make_quiver(n, &arrows)
    }

    /// `kQ` for a connected acyclic `Q`.
    pub fn hereditary(&mut self, bounds: Bounds, field: Field) -> Presentation {
        Presentation::hereditary(self.connected_quiver(bounds, true), field)
    }

    /// `kQ/F²` for a connected `Q` with at least one arrow that is not a
    /// crown. Falls back to a crown when the bounds admit nothing else.
    pub fn radical_square_zero(&mut self, bounds: Bounds, field: Field) -> Presentation {
        for _ in 0..64 {
            let q = self.connected_quiver(bounds, false);
            if q.num_arrows() > 0 && classify_shape(&q).crown_order == 0 {
                return Presentation::radical_square_zero(q, field);
            }
        }
        self.crown(bounds, field)
    }

    /// `kC/F²` for the `c`-crown.
    pub fn crown_of(c: usize, field: Field) -> Presentation {
        let arrows: Vec<(usize, usize)> = (0..c).map(|i| (i, (i + 1) % c)).collect();
        Presentation::radical_square_zero(make_quiver(c, &arrows), field)
    }

    pub fn crown(&mut self, bounds: Bounds, field: Field) -> Presentation {
        let c = self.rng.gen_range(1..=bounds.max_vertices.min(bounds.max_arrows).max(1));
        Sampler::crown_of(c, field)
    }

    /// `kQ/⟨Z⟩` for a connected acyclic `Q`, `Z` a random set of paths of
    /// length two or three.
    pub fn triangular_monomial(&mut self, bounds: Bounds, field: Field) -> Presentation {
        let q = self.connected_quiver(bounds, true);
        let candidates: Vec<Path> = enumerate_paths(&q, 3).into_iter().filter(|p| p.len() >= 2).collect();
        let k = if candidates.is_empty() { 0 } else { self.rng.gen_range(1..=candidates.len().min(3)) };
        let z: Vec<Path> = candidates.choose_multiple(&mut self.rng, k).cloned().collect();
        Presentation::monomial(q, field, z).expect("paths of length at least two")
    }

    /// Arbitrary admissible presentation: random monomials and linear
    /// combinations of parallel paths, plus all paths of length `L` when
    /// `Q` has oriented cycles.
    pub fn general(&mut self, bounds: Bounds, field: Field) -> Presentation {
        let q = self.connected_quiver(bounds, false);
        let long: Vec<Path> = enumerate_paths(&q, 3).into_iter().filter(|p| p.len() >= 2).collect();
        let mut gens: Vec<Vec<(Path, _)>> = Vec::new();
        let nonzero = |rng: &mut ChaCha8Rng| loop {
            let c = field.from_i64(rng.gen_range(-3..=3));
            if !c.is_zero() {
                return c;
            }
        };
        if !long.is_empty() {
            for _ in 0..self.rng.gen_range(0..=3) {
                let p = long.choose(&mut self.rng).expect("nonempty").clone();
                let parallel: Vec<&Path> = long.iter().filter(|r| **r != p && r.is_parallel(&p)).collect();
                let mut gen = vec![(p, field.one())];
                if !parallel.is_empty() && self.rng.gen_bool(0.6) {
                    for r in parallel.choose_multiple(&mut self.rng, 2) {
                        gen.push(((*r).clone(), nonzero(&mut self.rng)));
                    }
                }
                gens.push(gen);
            }
        }
        if !classify_shape(&q).acyclic {
            let l = self.rng.gen_range(2..=3);
            for p in enumerate_paths(&q, l).into_iter().filter(|p| p.len() == l) {
                gens.push(vec![(p, field.one())]);
            }
        }
        Presentation::new(q, field, gens).expect("generated relations have length at least two")
    }

    pub fn kind(&mut self) -> Kind {
        Kind::ALL[self.rng.gen_range(0..Kind::ALL.len())]
    }

    pub fn of_kind(&mut self, kind: Kind, bounds: Bounds) -> Presentation {
        let field = self.field();
        match kind {
            Kind::Hereditary => self.hereditary(bounds, field),
            Kind::RadicalSquareZero => self.radical_square_zero(bounds, field),
            Kind::Crown => self.crown(bounds, field),
            Kind::TriangularMonomial => self.triangular_monomial(bounds, field),
            Kind::General => self.general(bounds, field),
        }
    }
}

/// Serializes a presentation in the input language.
pub fn render_presentation(p: &Presentation) -> String {
    let q = p.quiver();
    let mut out = String::new();
    match p.field() {
        Field::Rational => out.push_str("field Q\n"),
        Field::Prime(pr) => {
            let _ = writeln!(out, "field F {pr}");
        }
    }
    let names: Vec<&str> = (0..q.num_vertices()).map(|v| q.vertex_name(v)).collect();
    let _ = writeln!(out, "vertices {}", names.join(" "));
    for a in q.arrows() {
        let _ = writeln!(out, "arrow {} {} {}", a.name, q.vertex_name(a.source), q.vertex_name(a.target));
    }
    if !p.relations().is_empty() {
        out.push_str("relations\n");
        for r in p.relations() {
            let _ = writeln!(out, "{}", r.render(q));
        }
    }
    out
}

/// Every invariant assertion applied to one presentation; returns the
/// failures.
pub fn check_presentation(p: &Presentation, opts: &ComputeOptions) -> Vec<String> {
    let mut failures = Vec::new();
    let alg = match build_algebra(p, DEFAULT_LENGTH_CAP) {
        Ok(a) => a,
        Err(e) => return vec![format!("build: {e}")],
    };
    let report: InvariantReport = match compute_report(&alg, opts) {
        Ok(r) => r,
        Err(e) => return vec![format!("report: {e}")],
    };
    for row in report.mismatches() {
        let routes: Vec<String> = row.routes.iter().map(|r| format!("{}={}", r.name, r.value)).collect();
        failures.push(format!("{} routes disagree: {}", row.name, routes.join(", ")));
    }
    if report.dim("excess").is_some_and(|e| e < 0) {
        failures.push("negative excess".into());
    }
    match cross_validate_report(&alg, &report) {
        Ok(cv) => {
            for c in cv.checks.iter().filter(|c| !c.matches()) {
                failures.push(format!("{} {}: closed {} general {}", c.family, c.invariant, c.closed, c.general));
            }
        }
        Err(e) => failures.push(format!("closed forms: {e}")),
    }
    let shape = classify_shape(p.quiver());
    if p.is_monomial() && shape.acyclic && shape.connected {
        match tree_theorem_check(p) {
            Ok(t) if !t.consistent() => failures.push(format!("tree theorem: {t:?}")),
            Ok(_) => {}
            Err(e) => failures.push(format!("tree theorem: {e}")),
        }
    }
    failures
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub index: usize,
    pub presentation: String,
    pub messages: Vec<String>,
}

/// Outcome of [`run_selfcheck`]. The rendering is a function of the seed,
/// count and bounds only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summary {
    pub seed: u64,
    pub bounds: Bounds,
    pub count: usize,
    pub passed: usize,
    pub by_kind: BTreeMap<Kind, usize>,
    /// How often each closed form family was exercised.
    pub closed_forms: BTreeMap<String, usize>,
    pub failures: Vec<Failure>,
}

impl Summary {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "selfcheck seed={} count={} max_vertices={} max_arrows={}",
            self.seed, self.count, self.bounds.max_vertices, self.bounds.max_arrows
        );
        for (k, n) in &self.by_kind {
            let _ = writeln!(s, "  generated {:<22} {n}", k.name());
        }
        for (f, n) in &self.closed_forms {
            let _ = writeln!(s, "  closed form {f:<20} {n}");
        }
        for f in &self.failures {
            let _ = writeln!(s, "FAIL #{}: {}", f.index, f.messages.join("; "));
            for line in f.presentation.lines() {
                let _ = writeln!(s, "    {line}");
            }
        }
        let _ = writeln!(s, "passed {}/{}", self.passed, self.count);
        s
    }
}

/// Generates `count` presentations and checks each of them.
pub fn run_selfcheck(seed: u64, count: usize, bounds: Bounds) -> Summary {
    let mut gen = Sampler::new(seed);
    let opts = ComputeOptions::default();
    let mut summary = Summary {
        seed,
        bounds,
        count,
        passed: 0,
        by_kind: BTreeMap::new(),
        closed_forms: BTreeMap::new(),
        failures: Vec::new(),
    };
    for index in 0..count {
        let kind = gen.kind();
        let p = gen.of_kind(kind, bounds);
        *summary.by_kind.entry(kind).or_default() += 1;
        if let Ok(alg) = build_algebra(&p, DEFAULT_LENGTH_CAP) {
            if let Ok(cv) = compute_report(&alg, &ComputeOptions { bar: false, ..opts })
                .and_then(|r| cross_validate_report(&alg, &r))
            {
                for f in cv.families {
                    *summary.closed_forms.entry(f.to_string()).or_default() += 1;
                }
            }
        }
        let messages = check_presentation(&p, &opts);
        if messages.is_empty() {
            summary.passed += 1;
        } else {
            summary.failures.push(Failure { index, presentation: render_presentation(&p), messages });
        }
    }
    summary
}

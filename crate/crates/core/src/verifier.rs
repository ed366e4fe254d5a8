//! Computational checks of the loop construction: catalog geometry,
//! producibility, free glues, classification of every maximal path,
//! bounds, the controlled-loop lemma and the width/size scaling.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::construction::{generate_tileset, Catalog, ConstructionError, Params, PathName};
use crate::explorer::{
    enumerate_paths, free_glues, is_dead_end, sample_terminal, ExplorationBounds, ExploreError,
    FreeGlueRecord, PathEnumeration,
};
use crate::model::{
    conflict_between, Family, Glue, Path, Pos, Side, TileAssemblySystem, TileType, Vector,
};

/// Names of the checks, in report order.
pub const CHECK_NAMES: [&str; 7] = [
    "positions",
    "producible",
    "freeglues",
    "classify",
    "bounds",
    "main",
    "theorem",
];

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Explore(#[from] ExploreError),
    #[error("unknown check '{0}'")]
    UnknownCheck(String),
}

/// A generated (or externally supplied) system together with its catalog.
#[derive(Clone, Debug)]
pub struct Subject {
    pub params: Params,
    pub system: TileAssemblySystem,
    pub catalog: Catalog,
}

impl Subject {
    pub fn generate(params: &Params) -> Result<Self, VerifyError> {
        let system = generate_tileset(params)?;
        Subject::with_system(params, system)
    }

    /// Catalog paths resolve types of `system` by name.
    pub fn with_system(params: &Params, system: TileAssemblySystem) -> Result<Self, VerifyError> {
        let catalog = Catalog::for_tileset(params, system.tileset())?;
        Ok(Subject {
            params: params.clone(),
            system,
            catalog,
        })
    }

    pub fn with_catalog(params: &Params, system: TileAssemblySystem, catalog: Catalog) -> Self {
        Subject {
            params: params.clone(),
            system,
            catalog,
        }
    }

    pub fn bounds(&self) -> ExplorationBounds {
        ExplorationBounds::for_params(&self.params).expanded(2)
    }

    pub fn enumerate(&self) -> Result<PathEnumeration, ExploreError> {
        enumerate_paths(&self.system, &self.bounds())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one check at one parameter pair.
#[derive(Clone, Debug)]
pub struct Report {
    pub check: String,
    pub k: usize,
    pub n: usize,
    pub status: Status,
    /// Failure witnesses, or summary figures on success.
    pub witnesses: Vec<String>,
    pub paths_enumerated: usize,
    pub elapsed: Duration,
}

impl Report {
    fn new(check: &str, p: &Params) -> Self {
        Report {
            check: check.to_string(),
            k: p.k(),
            n: p.n(),
            status: Status::Pass,
            witnesses: Vec::new(),
            paths_enumerated: 0,
            elapsed: Duration::ZERO,
        }
    }

    fn fail(&mut self, witness: impl Into<String>) {
        self.status = Status::Fail;
        self.witnesses.push(witness.into());
    }

    fn note(&mut self, note: impl Into<String>) {
        self.witnesses.push(note.into());
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// One line, no timing.
impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        write!(f, "CHECK {} k={} n={} {}", self.check, self.k, self.n, status)?;
        for w in &self.witnesses {
            write!(f, " {w}")?;
        }
        Ok(())
    }
}

fn timed(check: &str, p: &Params, body: impl FnOnce(&mut Report)) -> Report {
    let start = Instant::now();
    let mut r = Report::new(check, p);
    body(&mut r);
    r.elapsed = start.elapsed();
    r
}

/// Short description of a path for witnesses.
pub fn describe_path(path: &Path, sys: &TileAssemblySystem) -> String {
    let ts = sys.tileset();
    let tile = |i: usize| {
        let t = path.tiles()[i];
        format!("{}{}", t.pos, ts.name(t.ty))
    };
    match path.len() {
        0 => "path[]".to_string(),
        1 => format!("path[{}]", tile(0)),
        len => format!("path[len={len} {}..{}]", tile(0), tile(len - 1)),
    }
}

/// Final piece of a classified path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Residual {
    /// Prefix of the green hook followed by the whole orange column.
    PrefixOfGreenOrange,
    PrefixOfDead(usize),
    PrefixOfDoubleDead(usize, usize),
    /// Ends with a complete `A_{1,1}` after at least zero hops.
    CompleteLoop,
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::PrefixOfGreenOrange => write!(f, "prefix-of-GY"),
            Residual::PrefixOfDead(i) => write!(f, "prefix-of-D({i})"),
            Residual::PrefixOfDoubleDead(i, j) => write!(f, "prefix-of-DD({i},{j})"),
            Residual::CompleteLoop => write!(f, "complete"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    /// `(i, j)` for each stripped `A_{i,j}` with its translation.
    pub hops: Vec<(usize, usize)>,
    pub residual: Residual,
    /// The residual is the whole block, not a proper prefix.
    pub complete: bool,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "hops=[")?;
        for (m, (i, j)) in self.hops.iter().enumerate() {
            if m > 0 {
                write!(f, ",")?;
            }
            write!(f, "({i},{j})")?;
        }
        write!(f, "] residual={}", self.residual)?;
        if self.complete && self.residual != Residual::CompleteLoop {
            write!(f, " (full)")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unclassifiable at tile {index} after hops {hops:?}")]
pub struct Unclassifiable {
    /// First tile index the decomposition could not account for.
    pub index: usize,
    pub hops: Vec<(usize, usize)>,
}

/// Length of the longest common prefix of `a` and `b`.
fn common_prefix(a: &[crate::model::Tile], b: &[crate::model::Tile]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Decompose a producible path of `T^(k,n)` into hops and a residual block.
pub fn classify_path(path: &Path, catalog: &Catalog) -> Result<Classification, Unclassifiable> {
    let p = catalog.params();
    let k = p.k();
    let mut hops = Vec::new();
    let mut start = 0usize;
    let mut offset = Vector::ZERO;
    let mut max_level = k;
    let mut top = true;
    let green_orange = catalog.green_orange();
    let n_green = catalog.green().len();
    loop {
        let rest = Path::from_tiles(path.tiles()[start..].to_vec()).translate(-offset);
        let rest = rest.tiles();
        let stuck = |matched: usize, hops: &Vec<(usize, usize)>| Unclassifiable {
            index: start + matched,
            hops: hops.clone(),
        };
        if top && rest.len() <= green_orange.len() {
            let m = common_prefix(rest, green_orange.tiles());
            if m == rest.len() {
                return Ok(Classification {
                    hops,
                    residual: Residual::PrefixOfGreenOrange,
                    complete: m == green_orange.len(),
                });
            }
        }
        let stem_len = |i: usize| n_green + catalog.orange(i).len() + 1;
        let level = (1..=max_level).find(|&i| {
            let a = catalog.composite(i, i).tiles();
            let s = stem_len(i);
            rest.len() >= s && common_prefix(rest, &a[..s]) == s
        });
        let Some(i) = level else {
            let best = (1..=max_level)
                .map(|i| common_prefix(rest, catalog.composite(i, i).tiles()))
                .max()
                .unwrap_or(0);
            return Err(stuck(best, &hops));
        };
        let dead = catalog.dead(i);
        let m = common_prefix(rest, dead.tiles());
        if m == rest.len() {
            let full = m == dead.len();
            let residual = if i == 1 && full {
                Residual::CompleteLoop
            } else {
                Residual::PrefixOfDead(i)
            };
            return Ok(Classification {
                hops,
                residual,
                complete: full,
            });
        }
        let mut next = None;
        for j in 2..=i {
            let a = catalog.composite(i, j);
            let g0 = catalog.green().tiles()[0].translate(p.u(i, j));
            let al = a.len();
            if rest.len() > al && common_prefix(rest, a.tiles()) == al && rest[al] == g0 {
                next = Some((j, al));
                break;
            }
        }
        let Some((j, al)) = next else {
            return Err(stuck(m, &hops));
        };
        let dd = catalog.double_dead(i, j);
        let m = common_prefix(rest, dd.tiles());
        if m == rest.len() {
            return Ok(Classification {
                hops,
                residual: Residual::PrefixOfDoubleDead(i, j),
                complete: m == dd.len(),
            });
        }
        hops.push((i, j));
        start += al;
        offset = offset + p.u(i, j);
        max_level = j - 1;
        top = false;
    }
}

/// Every maximal path predicted by the recursive decomposition.
pub fn catalog_closure(catalog: &Catalog) -> BTreeSet<Path> {
    fn rec(
        c: &Catalog,
        prefix: &Path,
        offset: Vector,
        max_level: usize,
        out: &mut BTreeSet<Path>,
    ) {
        let p = c.params();
        let k = p.k();
        for i in 1..=max_level {
            if i < k || i == 1 {
                out.insert(prefix.concat(&c.dead(i).translate(offset)));
            }
            for j in 2..=i {
                let a = c.composite(i, j);
                let base = prefix.concat(&a.translate(offset));
                if j > 2 {
                    let dd = c.double_dead(i, j).suffix_from(a.len());
                    out.insert(base.concat(&dd.translate(offset)));
                }
                rec(c, &base, offset + p.u(i, j), j - 1, out);
            }
        }
    }
    let mut out = BTreeSet::new();
    rec(
        catalog,
        &Path::default(),
        Vector::ZERO,
        catalog.params().k(),
        &mut out,
    );
    out
}

fn within(pos: Pos, xs: (i32, i32), ys: (i32, i32)) -> bool {
    (xs.0..=xs.1).contains(&pos.x) && (ys.0..=ys.1).contains(&pos.y)
}

/// Each building block stays inside its stated column/row band.
pub fn verify_positions(s: &Subject) -> Report {
    let p = &s.params;
    let n = p.ni();
    timed("positions", p, |r| {
        for (name, path) in s.catalog.blocks() {
            let (xs, ys) = match name {
                PathName::Green => ((1, n), (0, 1)),
                PathName::Orange(i) => ((n - 1, n - 1), (2, p.h(i) - 1)),
                PathName::Blue(i) => ((n, 2 * n - 1), (p.h(i) - 2, p.h(i) - 1)),
                PathName::RedPrefix(j, i) => ((n, n), (p.h(i) - p.h(j) + p.h(j - 1), p.h(i) - 3)),
                _ => continue,
            };
            if let Some(t) = path.tiles().iter().find(|t| !within(t.pos, xs, ys)) {
                r.fail(format!(
                    "{name}@{}{}",
                    t.pos,
                    s.system.tileset().name(t.ty)
                ));
            }
        }
        if r.passed() {
            r.note(format!("blocks={}", s.catalog.blocks().len()));
        }
    })
}

/// `A_{i,i}` and all of its prefixes are producible.
pub fn verify_producible(s: &Subject) -> Report {
    let p = &s.params;
    timed("producible", p, |r| {
        for i in 1..=p.k() {
            let a = s.catalog.composite(i, i);
            if let Err(e) = s.system.check_path_producible(a) {
                r.fail(format!("A:{i},{i} {e:?} {}", describe_path(a, &s.system)));
                continue;
            }
            for len in 1..a.len() {
                let pre = a.prefix(len);
                if !s.system.path_producible(&pre) {
                    r.fail(format!("A:{i},{i} prefix {}", describe_path(&pre, &s.system)));
                    break;
                }
            }
        }
        if r.passed() {
            r.note(format!("paths={}", p.k()));
        }
    })
}

/// Free glues of `A_{i,i}` from the closed-form description.
pub fn predicted_free_glues(p: &Params, i: usize) -> Vec<FreeGlueRecord> {
    let k = p.k();
    let n = p.ni();
    let mut v = Vec::new();
    let rec = |x, y, side, f, idx: i32| FreeGlueRecord {
        pos: Pos::new(x, y),
        side,
        glue: Glue::indexed(f, idx as u32),
    };
    if i < k {
        v.push(rec(n - 1, p.h(i) - 1, Side::North, Family::Orange, p.h(i) - 2));
    }
    for s in 1..i {
        v.push(rec(n - 1, p.h(s) - 1, Side::East, Family::Blue, 0));
    }
    for j in 2..=i {
        v.push(rec(n, p.h(i) - p.h(j) + p.h(j - 1), Side::East, Family::Green, 0));
    }
    if 1 < i && i < k {
        let idx = p.h(i) - p.h(i - 1) - 2;
        v.push(rec(n, p.h(i - 1), Side::South, Family::Red, idx));
    }
    v.sort();
    v
}

pub fn verify_free_glues(s: &Subject) -> Report {
    let p = &s.params;
    timed("freeglues", p, |r| {
        let fmt_rec = |g: &FreeGlueRecord| format!("{}{}={}", g.pos, g.side.letter(), g.glue);
        let mut total = 0;
        for i in 1..=p.k() {
            let got = free_glues(s.catalog.composite(i, i), &s.system);
            let want = predicted_free_glues(p, i);
            total += got.len();
            let got_set: BTreeSet<_> = got.iter().collect();
            let want_set: BTreeSet<_> = want.iter().collect();
            for g in want_set.difference(&got_set) {
                r.fail(format!("A:{i},{i} missing {}", fmt_rec(g)));
            }
            for g in got_set.difference(&want_set) {
                r.fail(format!("A:{i},{i} extra {}", fmt_rec(g)));
            }
        }
        if r.passed() {
            r.note(format!("records={total}"));
        }
    })
}

/// Expected dead-end status of `D_i`.
pub fn dead_is_dead_end(k: usize, i: usize) -> bool {
    i < k || i == 1
}

/// Expected dead-end status of `D_{i,j}`.
pub fn double_dead_is_dead_end(j: usize) -> bool {
    j > 2
}

/// Every maximal path classifies, the maximal set equals the closure, and the
/// dead-end predicate matches the table.
pub fn verify_classification(s: &Subject, e: &PathEnumeration) -> Report {
    let p = &s.params;
    timed("classify", p, |r| {
        r.paths_enumerated = e.paths.len();
        let mut bad = 0;
        for path in &e.paths {
            if let Err(u) = classify_path(path, &s.catalog) {
                bad += 1;
                if bad <= 3 {
                    r.fail(format!(
                        "unclassifiable@{} {}",
                        u.index,
                        describe_path(path, &s.system)
                    ));
                }
            }
        }
        if bad > 3 {
            r.fail(format!("unclassifiable_total={bad}"));
        }
        let closure = catalog_closure(&s.catalog);
        let found: BTreeSet<&Path> = e.paths.iter().collect();
        let predicted: BTreeSet<&Path> = closure.iter().collect();
        for (m, path) in predicted.difference(&found).enumerate() {
            if m < 3 {
                r.fail(format!("missing {}", describe_path(path, &s.system)));
            }
        }
        for (m, path) in found.difference(&predicted).enumerate() {
            if m < 3 {
                r.fail(format!("unpredicted {}", describe_path(path, &s.system)));
            }
        }
        let k = p.k();
        for i in 1..=k {
            let got = is_dead_end(s.catalog.dead(i), &s.system);
            if got != dead_is_dead_end(k, i) {
                r.fail(format!("D:{i} dead_end={got}"));
            }
            for j in 2..=i {
                let got = is_dead_end(s.catalog.double_dead(i, j), &s.system);
                if got != double_dead_is_dead_end(j) {
                    r.fail(format!("DD:{i},{j} dead_end={got}"));
                }
            }
        }
        if r.passed() {
            r.note(format!("maximal={}", e.paths.len()));
        }
    })
}

/// Row/column bounds of paths starting `G Y^i B^i_0`, and confinement to the region.
pub fn verify_bounds(s: &Subject, e: &PathEnumeration) -> Report {
    let p = &s.params;
    let n = p.ni();
    timed("bounds", p, |r| {
        r.paths_enumerated = e.paths.len();
        let (lo, hi) = p.region();
        let mut covered = vec![false; p.k() + 1];
        for path in &e.paths {
            if let Some(t) = path
                .tiles()
                .iter()
                .find(|t| !within(t.pos, (lo.x, hi.x), (lo.y, hi.y)))
            {
                r.fail(format!("outside_region {} in {}", t.pos, describe_path(path, &s.system)));
                continue;
            }
            for (i, seen) in covered.iter_mut().enumerate().skip(1) {
                let a = s.catalog.composite(i, i);
                let stem = s.catalog.green().len() + s.catalog.orange(i).len() + 1;
                if path.len() < stem || path.tiles()[..stem] != a.tiles()[..stem] {
                    continue;
                }
                *seen = true;
                let first = path.tiles()[0].pos;
                let (bl, tr) = path.bounding_box().expect("nonempty");
                if bl.x != first.x || bl.y != first.y {
                    r.fail(format!("i={i} first_not_southwest {}", describe_path(path, &s.system)));
                }
                if tr.y != p.h(i) - 1 {
                    r.fail(format!("i={i} top_row={} {}", tr.y, describe_path(path, &s.system)));
                }
                let limit = (i + 1) * p.n() - 1;
                if path.width() > limit {
                    r.fail(format!(
                        "i={i} width={}>{limit} {}",
                        path.width(),
                        describe_path(path, &s.system)
                    ));
                }
            }
        }
        for (i, c) in covered.iter().enumerate().skip(1) {
            if !c {
                r.fail(format!("i={i} no_path_with_prefix GY^{i}B^{i}_0"));
            }
        }
        if r.passed() {
            r.note(format!("paths={} n={n}", e.paths.len()));
        }
    })
}

/// Options for the sampled half of the main lemma.
#[derive(Clone, Copy, Debug)]
pub struct Sampling {
    pub samples: usize,
    pub first_seed: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            samples: 100,
            first_seed: 0,
        }
    }
}

/// `L^k` is producible with width `(k+1)n-1`, conflicts with no enumerated
/// path, and lies inside every sampled terminal assembly.
pub fn verify_main_lemma(s: &Subject, e: Option<&PathEnumeration>, sampling: Sampling) -> Report {
    let p = &s.params;
    let k = p.k();
    timed("main", p, |r| {
        let l = s.catalog.loop_path(k);
        let want_width = (k + 1) * p.n() - 1;
        if let Err(f) = s.system.check_path_producible(l) {
            r.fail(format!("L:{k} {f:?}"));
            return;
        }
        if l.width() != want_width {
            r.fail(format!("L:{k} width={} expected={want_width}", l.width()));
        }
        let mut conflicts = 0;
        if let Some(e) = e {
            r.paths_enumerated = e.paths.len();
            for path in &e.paths {
                if let Some(pos) = conflict_between(path, l) {
                    conflicts += 1;
                    if conflicts <= 3 {
                        r.fail(format!("conflict@{pos} {}", describe_path(path, &s.system)));
                    }
                }
            }
        }
        let Ok(loop_asm) = s.system.assembly_of_path(l) else {
            r.fail(format!("L:{k} overlaps seed"));
            return;
        };
        let bounds = s.bounds();
        let seeds: Vec<u64> = (0..sampling.samples as u64)
            .map(|i| sampling.first_seed.wrapping_add(i))
            .collect();
        let outcomes: Vec<Result<Option<String>, ExploreError>> = seeds
            .par_iter()
            .map(|&seed| {
                let a = sample_terminal(&s.system, seed, &bounds)?;
                let grown: Vec<Pos> = a.grown_positions().collect();
                let width = crate::model::width_of(grown.iter().copied());
                let height = a.height();
                if !loop_asm.is_subassembly_of(&a) {
                    return Ok(Some(format!("rng={seed} missing_L{k}")));
                }
                if width != want_width {
                    return Ok(Some(format!("rng={seed} width={width}")));
                }
                if height > p.h(k) as usize {
                    return Ok(Some(format!("rng={seed} height={height}")));
                }
                Ok(None)
            })
            .collect();
        for o in outcomes {
            match o {
                Ok(None) => {}
                Ok(Some(w)) => r.fail(w),
                Err(err) => r.fail(format!("sampler: {err}")),
            }
        }
        if r.passed() {
            r.note(format!(
                "width={} conflicts=0 samples={}",
                l.width(),
                sampling.samples
            ));
        }
    })
}

/// `t log_3 t / 5`.
pub fn theorem_bound(t: usize) -> f64 {
    let t = t as f64;
    t * t.ln() / 3f64.ln() / 5.0
}

/// Size/width relation at `n = 2h_k` for the subject's own `k`.
pub fn verify_theorem_instance(s: &Subject) -> Report {
    let p = &s.params;
    let k = p.k();
    timed("theorem", p, |r| {
        let t = s.system.tileset().len();
        if p.n() as i32 != 2 * p.h(k) {
            r.fail(format!("n={} differs from 2h_k={}", p.n(), 2 * p.h(k)));
            return;
        }
        let want_t = (8 * p.h(k) - p.h(k - 1) - 1) as usize;
        if t != want_t {
            r.fail(format!("t={t} expected={want_t}"));
        }
        let l = s.catalog.loop_path(k);
        if let Err(f) = s.system.check_path_producible(l) {
            r.fail(format!("L:{k} {f:?}"));
            return;
        }
        let width = l.width();
        let bound = theorem_bound(t);
        if width != (k + 1) * p.n() - 1 {
            r.fail(format!("width={width} expected={}", (k + 1) * p.n() - 1));
        }
        if (width as f64) < bound {
            r.fail(format!("width={width} < bound={bound:.2}"));
        }
        if p.h(k) as usize >= t {
            r.fail(format!("h_k={} >= t={t}", p.h(k)));
        }
        if r.passed() {
            r.note(format!("t={t} width={width} bound={bound:.2}"));
        }
    })
}

/// Theorem instances for every `k` in `ks`, each with `n = 2h_k`.
pub fn verify_theorem(ks: impl IntoIterator<Item = usize>) -> Result<Vec<Report>, VerifyError> {
    ks.into_iter()
        .map(|k| {
            let n = 2 * crate::construction::h_seq(k) as usize;
            let s = Subject::generate(&Params::new(k, n)?)?;
            Ok(verify_theorem_instance(&s))
        })
        .collect()
}

/// Which checks to run on a subject.
#[derive(Clone, Debug)]
pub struct Plan {
    pub checks: Vec<String>,
    pub sampling: Sampling,
    /// Run the enumeration-based parts (classify, bounds, conflicts).
    pub exhaustive: bool,
}

impl Plan {
    pub fn all(sampling: Sampling) -> Self {
        Plan {
            checks: CHECK_NAMES[..6].iter().map(|s| s.to_string()).collect(),
            sampling,
            exhaustive: true,
        }
    }

    pub fn only(names: &[&str], sampling: Sampling) -> Result<Self, VerifyError> {
        for n in names {
            if !CHECK_NAMES.contains(n) {
                return Err(VerifyError::UnknownCheck(n.to_string()));
            }
        }
        Ok(Plan {
            checks: names.iter().map(|s| s.to_string()).collect(),
            sampling,
            exhaustive: true,
        })
    }
}

/// Run the planned checks on one subject; the enumeration is shared.
pub fn run_subject(s: &Subject, plan: &Plan) -> Result<Vec<Report>, VerifyError> {
    let needs_enum = plan.exhaustive
        && plan
            .checks
            .iter()
            .any(|c| matches!(c.as_str(), "classify" | "bounds" | "main"));
    let e = if needs_enum { Some(s.enumerate()?) } else { None };
    let mut out: Vec<Report> = plan
        .checks
        .par_iter()
        .map(|c| match c.as_str() {
            "positions" => Ok(verify_positions(s)),
            "producible" => Ok(verify_producible(s)),
            "freeglues" => Ok(verify_free_glues(s)),
            "classify" => Ok(verify_classification(s, e.as_ref().expect("enumerated"))),
            "bounds" => Ok(verify_bounds(s, e.as_ref().expect("enumerated"))),
            "main" => Ok(verify_main_lemma(s, e.as_ref(), plan.sampling)),
            "theorem" => Ok(verify_theorem_instance(s)),
            other => Err(VerifyError::UnknownCheck(other.to_string())),
        })
        .collect::<Result<_, _>>()?;
    out.sort_by_key(|r| CHECK_NAMES.iter().position(|c| *c == r.check));
    Ok(out)
}

/// Injected faults used to confirm that every check can fail.
pub mod faults {
    use super::*;

    /// `T^(k,n)` with the east glue of the last red type removed.
    pub fn remove_red_east_glue(p: &Params) -> Result<TileAssemblySystem, VerifyError> {
        let sys = generate_tileset(p)?;
        let name = format!("r{}", p.red_len().saturating_sub(1));
        let ts = sys.tileset();
        let id = ts
            .id_of(&name)
            .ok_or_else(|| ConstructionError::MissingType(name.clone()))?;
        let ty: TileType = ts.get(id).clone().with_glue(Side::East, None);
        let mutated = ts.replace(&name, ty).map_err(ConstructionError::from)?;
        Ok(sys.with_tileset(mutated).map_err(ConstructionError::from)?)
    }

    /// The generated system with `Y^j` translated by `v` in the catalog.
    pub fn shift_orange(p: &Params, j: usize, v: Vector) -> Result<Subject, VerifyError> {
        let system = generate_tileset(p)?;
        let mut parts = Catalog::for_tileset(p, system.tileset())?.parts().clone();
        parts.orange[j - 1] = parts.orange[j - 1].translate(v);
        Ok(Subject::with_catalog(p, system, Catalog::from_parts(parts)))
    }
}

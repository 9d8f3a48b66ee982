//! Batch drivers: exhaustive subset sweeps, the dihedral family scans and the
//! `|Aut|` regression. Every scan yields one [`Record`] per instance, in
//! instance order, written as one JSON object per line.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{automorphism_group, Graph};
use crate::group::{
    all_subgroups, automorphisms, build_dihedral, build_generalized_dihedral, generating_sequence,
    is_characteristic, quotient, subgroup_as_group, FiniteGroup, GroupElem,
};
use crate::haar::{
    connectivity_criterion, haar_graph, is_cayley_with_aut, right_translations, CayleyVerdict, HaarSpec,
    WitnessSearch, DEFAULT_CAYLEY_BUDGET,
};

/// Largest group swept over all `2^|G|` subsets.
pub const MAX_EXHAUSTIVE_ORDER: usize = 14;

/// Largest `D(A)` accepted by [`gendih_valency_check`].
pub const MAX_GENDIH_ORDER: usize = 24;

/// Highest valency covered by the generalized dihedral claim.
pub const GENDIH_CLAIMED_VALENCY: usize = 5;

pub const DIHEDRAL_PATTERN: &str = "1,a,a^3,b,ab,a^3b";
pub const PROP36_PATTERN: &str = "1,a,a^3,b,ab,a^2b,a^4b";

/// One scanned instance. Unset fields were not computed by that scan.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub key: String,
    pub spec: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valency: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connected: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_transitive: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alg_cayley: Option<bool>,
    /// `yes`, `no` or `unknown`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cayley: Option<String>,
    /// Decimal, since it can exceed 64 bits.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aut_order: Option<String>,
    /// Whether the instance matches the expected outcome of the scan.
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub ok: usize,
    pub failed: usize,
    pub errors: usize,
    pub connected: usize,
    pub vertex_transitive: usize,
    pub alg_cayley: usize,
    pub not_alg_cayley: usize,
    pub cayley_yes: usize,
    pub cayley_no: usize,
    pub cayley_unknown: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub scan: String,
    pub records: Vec<Record>,
    /// Notable events, such as a disabled deduplication.
    pub events: Vec<String>,
}

impl ScanReport {
    /// Tallies recomputed from the records.
    pub fn summary(&self) -> Summary {
        let mut s = Summary { instances: self.records.len(), ..Summary::default() };
        for r in &self.records {
            s.ok += r.ok as usize;
            s.failed += !r.ok as usize;
            s.errors += r.error.is_some() as usize;
            s.connected += (r.connected == Some(true)) as usize;
            s.vertex_transitive += (r.vertex_transitive == Some(true)) as usize;
            s.alg_cayley += (r.alg_cayley == Some(true)) as usize;
            s.not_alg_cayley += (r.alg_cayley == Some(false)) as usize;
            match r.cayley.as_deref() {
                Some("yes") => s.cayley_yes += 1,
                Some("no") => s.cayley_no += 1,
                Some(_) => s.cayley_unknown += 1,
                None => {}
            }
        }
        s
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.ok)
    }

    pub fn write_jsonl(&self, out: &mut dyn Write) -> Result<()> {
        for r in &self.records {
            write_record(out, r)?;
        }
        Ok(())
    }

    /// Plain-text table of the summary counts.
    pub fn summary_table(&self) -> String {
        let s = self.summary();
        let rows = [
            ("instances", s.instances),
            ("ok", s.ok),
            ("failed", s.failed),
            ("errors", s.errors),
            ("connected", s.connected),
            ("vertex-transitive", s.vertex_transitive),
            ("alg-cayley", s.alg_cayley),
            ("not alg-cayley", s.not_alg_cayley),
            ("cayley yes", s.cayley_yes),
            ("cayley no", s.cayley_no),
            ("cayley unknown", s.cayley_unknown),
        ];
        let mut t = format!("scan {}\n", self.scan);
        for (name, v) in rows {
            t.push_str(&format!("  {name:<18} {v:>8}\n"));
        }
        for e in &self.events {
            t.push_str(&format!("  event: {e}\n"));
        }
        t
    }
}

fn write_record(out: &mut dyn Write, r: &Record) -> Result<()> {
    let line = serde_json::to_string(r).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out, "{line}").map_err(|e| Error::Io(e.to_string()))
}

/// Records from an earlier (possibly interrupted) run, keyed by `key`.
pub fn read_records(input: impl BufRead) -> Result<BTreeMap<String, Record>> {
    let mut out = BTreeMap::new();
    for (i, line) in input.lines().enumerate() {
        let line = line.map_err(|e| Error::Io(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let r: Record =
            serde_json::from_str(&line).map_err(|e| Error::Parse(format!("record line {}: {e}", i + 1)))?;
        out.insert(r.key.clone(), r);
    }
    Ok(out)
}

/// Execution settings shared by all scans.
pub struct ScanOptions<'a> {
    /// Worker threads; 0 uses the rayon default.
    pub workers: usize,
    /// Record wall time per instance (makes reports nondeterministic).
    pub timings: bool,
    /// Node budget for regular-subgroup searches.
    pub budget: u64,
    /// Completed records to reuse instead of recomputing.
    pub done: BTreeMap<String, Record>,
    /// Receives each newly computed record as soon as its batch finishes.
    pub sink: Option<&'a mut dyn Write>,
}

impl Default for ScanOptions<'_> {
    fn default() -> Self {
        ScanOptions { workers: 0, timings: false, budget: DEFAULT_CAYLEY_BUDGET, done: BTreeMap::new(), sink: None }
    }
}

/// Evaluates `items` in parallel batches, merging in instance order.
fn run<T: Sync>(
    scan: &str,
    items: Vec<(String, T)>,
    opts: &mut ScanOptions,
    eval: impl Fn(&T) -> Result<Record> + Sync,
) -> Result<ScanReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;
    let batch = pool.current_num_threads() * 8;
    let mut records = Vec::with_capacity(items.len());
    for chunk in items.chunks(batch) {
        let done = &opts.done;
        let timings = opts.timings;
        let computed: Vec<(Record, bool)> = pool.install(|| {
            chunk
                .par_iter()
                .map(|(key, item)| {
                    if let Some(r) = done.get(key) {
                        return (r.clone(), false);
                    }
                    let start = Instant::now();
                    let mut r = eval(item).unwrap_or_else(|e| Record {
                        spec: key.clone(),
                        error: Some(e.to_string()),
                        ..Record::default()
                    });
                    r.key = key.clone();
                    if timings {
                        r.wall_ms = Some(start.elapsed().as_millis() as u64);
                    }
                    (r, true)
                })
                .collect()
        });
        for (r, fresh) in computed {
            if fresh {
                if let Some(out) = opts.sink.as_deref_mut() {
                    write_record(out, &r)?;
                    out.flush().map_err(|e| Error::Io(e.to_string()))?;
                }
            }
            records.push(r);
        }
    }
    Ok(ScanReport { scan: scan.to_string(), records, events: Vec::new() })
}

fn cayley_str(v: &CayleyVerdict) -> String {
    v.as_str().to_string()
}

/// Graph-level fields: connectivity, `|Aut|`, vertex-transitivity and the
/// Cayley verdict (seeded with `G_R`).
fn graph_record(spec: &HaarSpec, x: &Graph, budget: u64) -> Result<Record> {
    let aut = automorphism_group(x, None)?;
    let vt = aut.is_transitive();
    let cayley = is_cayley_with_aut(x, &aut, Some(&right_translations(spec.group())), budget)?;
    Ok(Record {
        spec: spec.to_string(),
        valency: x.regular_degree(),
        connected: Some(x.is_connected()),
        vertex_transitive: Some(vt),
        cayley: Some(cayley_str(&cayley)),
        aut_order: Some(aut.order().to_string()),
        ..Record::default()
    })
}

fn check_range(lo: usize, hi: usize, min: usize) -> Result<()> {
    if lo < min || lo > hi {
        return Err(Error::InvalidParameter(format!("range {lo}..={hi} must start at {min} or later")));
    }
    Ok(())
}

/// `H(D_n, {1,a,a^3,b,ab,a^3b})` for `n` in `lo..=hi`; expected not
/// vertex-transitive throughout.
pub fn dihedral_pattern_scan(lo: usize, hi: usize, opts: &mut ScanOptions) -> Result<ScanReport> {
    check_range(lo, hi, 6)?;
    let items = (lo..=hi).map(|n| (format!("dihedral:{n}|{DIHEDRAL_PATTERN}"), n)).collect();
    let budget = opts.budget;
    run("dihedral-pattern", items, opts, |&n| {
        let g = build_dihedral(n)?;
        let s = g.parse_subset(DIHEDRAL_PATTERN)?;
        let spec = HaarSpec::new(g, s)?;
        let mut r = graph_record(&spec, &haar_graph(&spec), budget)?;
        r.ok = r.vertex_transitive == Some(false);
        Ok(r)
    })
}

/// `H(D_n, {1,a,a^3,b,ab,a^2b,a^4b})` for `n` in `lo..=hi`; expected
/// connected, 7-regular, with `|Aut| = 2n`.
pub fn prop36_check(lo: usize, hi: usize, opts: &mut ScanOptions) -> Result<ScanReport> {
    check_range(lo, hi, 8)?;
    let items = (lo..=hi).map(|n| (format!("dihedral:{n}|{PROP36_PATTERN}"), n)).collect();
    let budget = opts.budget;
    run("prop36", items, opts, |&n| {
        let g = build_dihedral(n)?;
        let s = g.parse_subset(PROP36_PATTERN)?;
        let spec = HaarSpec::new(g, s)?;
        let mut r = graph_record(&spec, &haar_graph(&spec), budget)?;
        r.ok = r.connected == Some(true)
            && r.valency == Some(7)
            && r.aut_order.as_deref() == Some((2 * n).to_string().as_str());
        Ok(r)
    })
}

/// Which subsets of `D(A)` the valency check visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetMode {
    /// `1 ∈ S`, and `|S ∩ A| <= 2` when `|S| <= 5` (any subset can be moved
    /// into this form by translation).
    Normalized,
    /// Every subset.
    Exhaustive,
}

/// Subsets of size at most `max_valency` as sorted element lists, in colex order.
fn subsets_up_to(n: usize, max_valency: usize) -> impl Iterator<Item = Vec<GroupElem>> {
    (0u64..1 << n)
        .filter(move |m| m.count_ones() as usize <= max_valency)
        .map(move |m| (0..n).filter(|i| m >> i & 1 == 1).collect())
}

/// Witness existence for subsets of `D(A)` of valency at most `max_valency`,
/// for each `A`. Instances of valency above 5 are reported but not expected to
/// pass.
pub fn gendih_valency_check(
    bases: &[FiniteGroup],
    max_valency: usize,
    mode: SubsetMode,
    opts: &mut ScanOptions,
) -> Result<ScanReport> {
    let mut searches = Vec::new();
    let mut items = Vec::new();
    for a in bases {
        let d = build_generalized_dihedral(a)?;
        if d.order() > MAX_GENDIH_ORDER {
            return Err(Error::ResourceLimit(format!(
                "D(A) of order {} exceeds the sweep limit {MAX_GENDIH_ORDER}",
                d.order()
            )));
        }
        let m = a.order();
        let e = d.identity();
        for s in subsets_up_to(d.order(), max_valency) {
            let keep = match mode {
                SubsetMode::Exhaustive => true,
                SubsetMode::Normalized => {
                    s.contains(&e) && (s.len() > GENDIH_CLAIMED_VALENCY || s.iter().filter(|&&x| x < m).count() <= 2)
                }
            };
            if keep {
                let spec = HaarSpec::new(d.clone(), s)?;
                items.push((spec.to_string(), (searches.len(), spec)));
            }
        }
        searches.push(WitnessSearch::new(&d)?);
    }
    run("gendih", items, opts, |(i, spec)| {
        let found = searches[*i].find(spec.subset()).is_some();
        let valency = spec.subset().len();
        Ok(Record {
            spec: spec.to_string(),
            valency: Some(valency),
            alg_cayley: Some(found),
            ok: found || valency > GENDIH_CLAIMED_VALENCY,
            ..Record::default()
        })
    })
}

/// How the translate-class deduplication went.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dedup {
    Off,
    /// Witness existence was constant on every class; one representative per class counted.
    Used { classes: usize },
    /// Some class mixed witness and no-witness subsets; all subsets counted.
    Disabled { mixed_classes: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgCayleySweep {
    pub holds: bool,
    /// First failing subset in colex order.
    pub counterexample: Option<Vec<GroupElem>>,
    /// Every failing subset, in colex order.
    pub failing: Vec<Vec<GroupElem>>,
    /// Subsets (or class representatives) counted.
    pub scanned: usize,
    pub dedup: Dedup,
}

fn mask_to_set(mask: u32, n: usize) -> Vec<GroupElem> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

/// Classes of subsets under `S -> g S^alpha h`, as a representative (the
/// colex-least member) for every mask.
fn translate_classes(g: &FiniteGroup) -> Result<Vec<u32>> {
    let n = g.order();
    let gens = generating_sequence(g);
    let mut maps: Vec<Vec<usize>> = Vec::new();
    for &x in &gens {
        maps.push(g.elements().map(|y| g.mul(x, y)).collect());
        maps.push(g.elements().map(|y| g.mul(y, x)).collect());
    }
    maps.extend(automorphisms(g)?.into_iter().map(|a| a.images().to_vec()));
    let size = 1usize << n;
    let mut parent: Vec<u32> = (0..size as u32).collect();
    fn find(p: &mut [u32], mut x: u32) -> u32 {
        while p[x as usize] != x {
            p[x as usize] = p[p[x as usize] as usize];
            x = p[x as usize];
        }
        x
    }
    for mask in 0..size as u32 {
        for map in &maps {
            let image = (0..n).filter(|&i| mask >> i & 1 == 1).fold(0u32, |acc, i| acc | 1 << map[i]);
            let (a, b) = (find(&mut parent, mask), find(&mut parent, image));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    Ok((0..size as u32).map(|m| find(&mut parent, m)).collect())
}

/// Does every subset of `g` admit a witness? With `dedup`, witness existence
/// is first confirmed constant on each translate class; only then are the
/// classes counted once each.
pub fn all_haar_alg_cayley(g: &FiniteGroup, dedup: bool) -> Result<AlgCayleySweep> {
    let n = g.order();
    if n > MAX_EXHAUSTIVE_ORDER {
        return Err(Error::ResourceLimit(format!(
            "exhaustive sweep limited to groups of order <= {MAX_EXHAUSTIVE_ORDER}"
        )));
    }
    let search = WitnessSearch::new(g)?;
    let has: Vec<bool> = (0u32..1 << n).into_par_iter().map(|m| search.find(&mask_to_set(m, n)).is_some()).collect();
    let failing: Vec<Vec<GroupElem>> =
        (0u32..1 << n).filter(|&m| !has[m as usize]).map(|m| mask_to_set(m, n)).collect();
    let (scanned, dedup) = if dedup {
        let rep = translate_classes(g)?;
        let mut verdict: BTreeMap<u32, (bool, bool)> = BTreeMap::new();
        for (m, &r) in rep.iter().enumerate() {
            let e = verdict.entry(r).or_default();
            if has[m] {
                e.0 = true;
            } else {
                e.1 = true;
            }
        }
        let mixed = verdict.values().filter(|(y, n)| *y && *n).count();
        if mixed == 0 {
            (verdict.len(), Dedup::Used { classes: verdict.len() })
        } else {
            (has.len(), Dedup::Disabled { mixed_classes: mixed })
        }
    } else {
        (has.len(), Dedup::Off)
    };
    Ok(AlgCayleySweep {
        holds: failing.is_empty(),
        counterexample: failing.first().cloned(),
        failing,
        scanned,
        dedup,
    })
}

/// Every subset of `g` as a record with connectivity and witness existence;
/// with `full`, also `|Aut|`, vertex-transitivity and the Cayley verdict.
pub fn all_subsets_scan(g: &FiniteGroup, full: bool, opts: &mut ScanOptions) -> Result<ScanReport> {
    let n = g.order();
    if n > MAX_EXHAUSTIVE_ORDER {
        return Err(Error::ResourceLimit(format!(
            "exhaustive sweep limited to groups of order <= {MAX_EXHAUSTIVE_ORDER}"
        )));
    }
    let search = WitnessSearch::new(g)?;
    let items = (0u32..1 << n)
        .map(|m| {
            let spec = HaarSpec::new(g.clone(), mask_to_set(m, n))?;
            Ok((spec.to_string(), spec))
        })
        .collect::<Result<Vec<_>>>()?;
    let budget = opts.budget;
    run("all-subsets", items, opts, |spec| {
        let x = haar_graph(spec);
        let mut r = if full {
            graph_record(spec, &x, budget)?
        } else {
            Record { spec: spec.to_string(), connected: Some(x.is_connected()), ..Record::default() }
        };
        let found = search.find(spec.subset()).is_some();
        r.alg_cayley = Some(found);
        // a witness gives a regular group, so "no" would be a contradiction
        r.ok = !(found && r.cayley.as_deref() == Some("no"))
            && (spec.subset().is_empty() || r.connected == Some(connectivity_criterion(spec)?));
        Ok(r)
    })
}

/// If every Haar graph of `g` is algebraically Cayley, checks that the same
/// holds for every subgroup and every quotient by a characteristic subgroup.
/// The first record is `g` itself.
pub fn closure_check(g: &FiniteGroup, opts: &mut ScanOptions) -> Result<ScanReport> {
    let top = all_haar_alg_cayley(g, false)?;
    let mut derived: Vec<(String, FiniteGroup)> = Vec::new();
    if top.holds {
        for h in all_subgroups(g)? {
            if h.order() > 1 && h.order() < g.order() {
                derived.push((format!("subgroup:{}", g.format_subset(h.members())), subgroup_as_group(g, &h)));
            }
            if h.order() > 1 && h.order() < g.order() && h.is_normal_in(g) && is_characteristic(g, &h)? {
                derived.push((format!("quotient:{}", g.format_subset(h.members())), quotient(g, &h)?.group));
            }
        }
    }
    let mut items = vec![(format!("group:{}", g.label()), g.clone())];
    items.extend(derived);
    let premise = top.holds;
    let mut report = run("closure", items, opts, |h| {
        let sweep = all_haar_alg_cayley(h, false)?;
        Ok(Record { spec: h.label().to_string(), alg_cayley: Some(sweep.holds), ok: sweep.holds || !premise, ..Record::default() })
    })?;
    if !premise {
        report.events.push(format!(
            "{} has a subset without witness; nothing to check",
            g.label()
        ));
    }
    Ok(report)
}

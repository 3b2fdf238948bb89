//! Carrier enumeration and bulk checking: classify every element of a
//! finite carrier, or run one law checker over the whole input space
//! and mine for witnesses and counterexamples.
//!
//! Determinism contract: a job (including its seed) fixes the report
//! byte-for-byte apart from the trailing `elapsed_ms` field, and the
//! worker count never changes report contents. The scan space is split
//! into contiguous index ranges, ranges are evaluated in parallel, and
//! partial results merge in range order.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::carrier::{CarrierSpec, RingElement};
use crate::error::{Error, Result};
use crate::geninv::{
    classify_element, compute_core, compute_group, compute_mp, compute_weighted_core,
    finite_elements, is_unit,
};
use crate::laws::{
    check_law, masked_status, CheckMode, InverseProvider, LawId, LawStatus,
};
use crate::rng::SplitMix64;
use crate::Limits;

/// Ordered stream over a finite carrier, in the documented row-major
/// ascending-residue order.
pub struct ElementIter {
    spec: CarrierSpec,
    next: u64,
    count: u64,
}

impl Iterator for ElementIter {
    type Item = RingElement;

    fn next(&mut self) -> Option<RingElement> {
        if self.next >= self.count {
            return None;
        }
        let e = self
            .spec
            .element_at(self.next)
            .expect("index below element count");
        self.next += 1;
        Some(e)
    }
}

/// Every element exactly once; errors on infinite or over-bound
/// carriers.
pub fn enumerate_carrier(spec: &CarrierSpec, limits: &Limits) -> Result<ElementIter> {
    if !spec.is_finite() {
        return Err(Error::InfiniteCarrier);
    }
    let count = spec.element_count().unwrap_or(u64::MAX);
    if count > limits.enumeration_bound {
        return Err(Error::CarrierTooLarge {
            size: count,
            bound: limits.enumeration_bound,
        });
    }
    Ok(ElementIter {
        spec: spec.clone(),
        next: 0,
        count,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum MiningMode {
    Exhaustive,
    Random { seed: u64, samples: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "lowercase")]
pub enum JobTask {
    Law { law: LawId },
    Classify,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MiningJob {
    pub carrier: CarrierSpec,
    #[serde(flatten)]
    pub task: JobTask,
    #[serde(flatten)]
    pub mode: MiningMode,
    /// Indices into the law's hypothesis list that are suppressed for
    /// necessity analysis.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub hypothesis_mask: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_inputs: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_limit_ms: Option<u64>,
    /// Worker count; not echoed in reports because it never affects
    /// their contents.
    #[serde(skip, default = "default_workers")]
    pub workers: usize,
    #[serde(default)]
    pub limits: Limits,
}

fn default_workers() -> usize {
    1
}

impl MiningJob {
    pub fn exhaustive(carrier: CarrierSpec, law: LawId) -> Self {
        MiningJob {
            carrier,
            task: JobTask::Law { law },
            mode: MiningMode::Exhaustive,
            hypothesis_mask: Vec::new(),
            max_inputs: None,
            time_limit_ms: None,
            workers: 1,
            limits: Limits::default(),
        }
    }
}

/// One recorded input tuple: enumeration indices, the elements
/// themselves (replayable), and the status the checker assigned.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub index: Vec<u64>,
    pub inputs: Vec<RingElement>,
    pub status: LawStatus,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub inputs: u64,
    /// Inputs whose (unmasked) hypotheses all held.
    pub hypothesis_satisfying: u64,
    pub vacuous: u64,
    /// Inputs whose conclusion evaluated to true, vacuous or not.
    pub conclusion_true: u64,
    pub counterexamples: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisCount {
    pub name: String,
    pub satisfied: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MiningReport {
    pub job: MiningJob,
    pub totals: Totals,
    pub per_hypothesis: Vec<HypothesisCount>,
    /// First few non-vacuous inputs with a positive status, in
    /// enumeration order.
    pub witnesses: Vec<CaseRecord>,
    /// Counterexamples and equivalence failures, complete up to the
    /// configured cap.
    pub counterexamples: Vec<CaseRecord>,
    pub partial: bool,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub carrier: CarrierSpec,
    pub elements: u64,
    pub units: u64,
    pub hermitian: u64,
    pub idempotents: u64,
    pub nilpotents: u64,
    pub mp_invertible: u64,
    pub group_invertible: u64,
    pub core_invertible: u64,
    pub drazin_index_histogram: BTreeMap<u32, u64>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum MiningOutput {
    Law(Box<MiningReport>),
    Classify(ClassifyReport),
}

impl MiningOutput {
    pub fn exit_is_clean(&self) -> bool {
        match self {
            MiningOutput::Law(r) => r.totals.counterexamples == 0 && !r.partial,
            MiningOutput::Classify(_) => true,
        }
    }
}

// ---------------------------------------------------------------------
// Cached inverse tables for one carrier.

/// Precomputed per-element inverse tables. Lookup is by enumeration
/// index; immutable after construction, so range workers share it
/// freely.
struct CachedProvider {
    spec: CarrierSpec,
    core: Vec<Option<RingElement>>,
    group: Vec<Option<RingElement>>,
    mp: Vec<Option<RingElement>>,
    /// Weighted-core tables keyed by the weight's enumeration index.
    weighted: HashMap<u64, Vec<Option<RingElement>>>,
}

impl CachedProvider {
    fn build(
        spec: &CarrierSpec,
        elements: &[RingElement],
        law: LawId,
        weights: &[(u64, RingElement)],
        limits: &Limits,
    ) -> Result<Self> {
        let opt = |r: std::result::Result<crate::geninv::InverseResult, Error>| r.ok().map(|v| v.value);
        let core = elements
            .iter()
            .map(|a| opt(compute_core(a, limits)))
            .collect();
        let group = if law == LawId::Thm34Equiv {
            elements
                .iter()
                .map(|a| opt(compute_group(a, limits)))
                .collect()
        } else {
            Vec::new()
        };
        let mp = if law == LawId::Thm311Hybrid {
            elements
                .iter()
                .map(|a| opt(compute_mp(a, limits)))
                .collect()
        } else {
            Vec::new()
        };
        let mut weighted = HashMap::new();
        for (e_idx, e) in weights {
            let table: Vec<Option<RingElement>> = elements
                .iter()
                .map(|a| opt(compute_weighted_core(a, e, limits)))
                .collect();
            weighted.insert(*e_idx, table);
        }
        Ok(CachedProvider {
            spec: spec.clone(),
            core,
            group,
            mp,
            weighted,
        })
    }

    fn lookup<'t>(&self, table: &'t [Option<RingElement>], a: &RingElement) -> Option<&'t Option<RingElement>> {
        let idx = self.spec.index_of(a).ok()? as usize;
        table.get(idx)
    }
}

impl InverseProvider for CachedProvider {
    fn core(&self, a: &RingElement) -> Result<Option<RingElement>> {
        Ok(self
            .lookup(&self.core, a)
            .cloned()
            .expect("core table covers the carrier"))
    }

    fn group(&self, a: &RingElement) -> Result<Option<RingElement>> {
        Ok(self
            .lookup(&self.group, a)
            .cloned()
            .expect("group table covers the carrier"))
    }

    fn mp(&self, a: &RingElement) -> Result<Option<RingElement>> {
        Ok(self
            .lookup(&self.mp, a)
            .cloned()
            .expect("mp table covers the carrier"))
    }

    fn weighted_core(&self, a: &RingElement, e: &RingElement) -> Result<Option<RingElement>> {
        let e_idx = self.spec.index_of(e)?;
        let table = self
            .weighted
            .get(&e_idx)
            .expect("weighted table exists for every enumerated weight");
        Ok(self.lookup(table, a).cloned().expect("table covers carrier"))
    }
}

// ---------------------------------------------------------------------
// The mining engine.

struct ChunkOut {
    totals: Totals,
    hyp_counts: Vec<u64>,
    witnesses: Vec<CaseRecord>,
    counterexamples: Vec<CaseRecord>,
    skipped: bool,
}

/// Run a mining job to completion (or budget) and report.
pub fn mine(job: &MiningJob) -> Result<MiningOutput> {
    match &job.task {
        JobTask::Classify => Ok(MiningOutput::Classify(classify_carrier(
            &job.carrier,
            &job.limits,
        )?)),
        JobTask::Law { law } => Ok(MiningOutput::Law(Box::new(mine_law(job, *law)?))),
    }
}

fn mine_law(job: &MiningJob, law: LawId) -> Result<MiningReport> {
    let started = Instant::now();
    let limits = &job.limits;
    let elements = finite_elements(&job.carrier, limits)?;
    let size = elements.len() as u64;
    let hyp_names = law.hypothesis_names();
    for &m in &job.hypothesis_mask {
        if m >= hyp_names.len() {
            return Err(Error::Parse(format!(
                "hypothesis mask index {m} out of range for {} ({} hypotheses)",
                law.name(),
                hyp_names.len()
            )));
        }
        if law.is_equivalence() {
            return Err(Error::Parse(
                "hypothesis masks apply to implication laws only".into(),
            ));
        }
    }

    // The weighted law ranges over every Hermitian unit of the carrier.
    let weights: Vec<(u64, RingElement)> = if law == LawId::Thm310Weighted {
        elements
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_hermitian() && is_unit(e))
            .map(|(i, e)| (i as u64, e.clone()))
            .collect()
    } else {
        Vec::new()
    };
    let n_weights = weights.len() as u64;
    let space: u64 = match law.arity() {
        2 => size * size,
        3 => size * size * n_weights,
        _ => unreachable!(),
    };

    let provider = CachedProvider::build(&job.carrier, &elements, law, &weights, limits)?;

    // Tuple list: exhaustive prefix or seeded uniform draws.
    let tuple_ids: Vec<u64> = match &job.mode {
        MiningMode::Exhaustive => {
            let capped = job.max_inputs.unwrap_or(space).min(space);
            (0..capped).collect()
        }
        MiningMode::Random { seed, samples } => {
            let mut rng = SplitMix64::new(*seed);
            let count = job.max_inputs.unwrap_or(*samples).min(*samples);
            (0..count).map(|_| rng.next_below(space)).collect()
        }
    };
    let truncated_by_budget = matches!(job.mode, MiningMode::Exhaustive)
        && (tuple_ids.len() as u64) < space;

    let decode = |t: u64| -> (Vec<u64>, Vec<RingElement>) {
        match law.arity() {
            2 => {
                let a = t / size;
                let b = t % size;
                (
                    vec![a, b],
                    vec![elements[a as usize].clone(), elements[b as usize].clone()],
                )
            }
            3 => {
                let pair = t / n_weights;
                let w = (t % n_weights) as usize;
                let a = pair / size;
                let b = pair % size;
                (
                    vec![a, b, weights[w].0],
                    vec![
                        elements[a as usize].clone(),
                        elements[b as usize].clone(),
                        weights[w].1.clone(),
                    ],
                )
            }
            _ => unreachable!(),
        }
    };

    let deadline_hit = AtomicBool::new(false);
    let chunk_size = 512usize;
    let chunks: Vec<&[u64]> = tuple_ids.chunks(chunk_size).collect();
    let eval_chunk = |ids: &&[u64]| -> ChunkOut {
        let mut out = ChunkOut {
            totals: Totals::default(),
            hyp_counts: vec![0u64; hyp_names.len()],
            witnesses: Vec::new(),
            counterexamples: Vec::new(),
            skipped: false,
        };
        if let Some(limit) = job.time_limit_ms {
            if deadline_hit.load(Ordering::Relaxed)
                || started.elapsed().as_millis() as u64 > limit
            {
                deadline_hit.store(true, Ordering::Relaxed);
                out.skipped = true;
                return out;
            }
        }
        for &t in ids.iter() {
            let (index, inputs) = decode(t);
            let verdict = check_law(law, &inputs, CheckMode::Scan, &provider, limits)
                .expect("scan-mode checks are total on a shared carrier");
            let status = masked_status(&verdict, &job.hypothesis_mask);
            out.totals.inputs += 1;
            debug_assert_eq!(verdict.hypotheses.len(), hyp_names.len());
            for (i, h) in verdict.hypotheses.iter().enumerate() {
                if h.satisfied {
                    out.hyp_counts[i] += 1;
                }
            }
            match status {
                LawStatus::VacuouslyTrue => out.totals.vacuous += 1,
                _ => out.totals.hypothesis_satisfying += 1,
            }
            if verdict.conclusion == Some(true) {
                out.totals.conclusion_true += 1;
            }
            match status {
                LawStatus::Counterexample | LawStatus::EquivalenceFails => {
                    out.totals.counterexamples += 1;
                    if out.counterexamples.len() < limits.counterexample_cap {
                        out.counterexamples.push(CaseRecord {
                            index,
                            inputs,
                            status,
                        });
                    }
                }
                LawStatus::ImplicationHolds | LawStatus::EquivalenceHolds => {
                    if out.witnesses.len() < limits.witness_cap {
                        out.witnesses.push(CaseRecord {
                            index,
                            inputs,
                            status,
                        });
                    }
                }
                LawStatus::VacuouslyTrue => {}
            }
        }
        out
    };

    let worker_count = job.workers.max(1);
    let chunk_outs: Vec<ChunkOut> = if worker_count == 1 {
        chunks.iter().map(eval_chunk).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(worker_count)
            .build()
            .expect("thread pool construction");
        pool.install(|| chunks.par_iter().map(eval_chunk).collect())
    };

    // Merge in range order; results after the first skipped chunk are
    // dropped so a timed-out report is always an index prefix.
    let mut totals = Totals::default();
    let mut hyp_counts = vec![0u64; hyp_names.len()];
    let mut witnesses: Vec<CaseRecord> = Vec::new();
    let mut counterexamples: Vec<CaseRecord> = Vec::new();
    let mut timed_out = false;
    for chunk in chunk_outs {
        if chunk.skipped {
            timed_out = true;
            break;
        }
        totals.inputs += chunk.totals.inputs;
        totals.hypothesis_satisfying += chunk.totals.hypothesis_satisfying;
        totals.vacuous += chunk.totals.vacuous;
        totals.conclusion_true += chunk.totals.conclusion_true;
        totals.counterexamples += chunk.totals.counterexamples;
        for (i, c) in chunk.hyp_counts.iter().enumerate() {
            hyp_counts[i] += c;
        }
        for w in chunk.witnesses {
            if witnesses.len() < limits.witness_cap {
                witnesses.push(w);
            }
        }
        for c in chunk.counterexamples {
            if counterexamples.len() < limits.counterexample_cap {
                counterexamples.push(c);
            }
        }
    }

    Ok(MiningReport {
        job: job.clone(),
        totals,
        per_hypothesis: hyp_names
            .iter()
            .zip(hyp_counts)
            .map(|(name, satisfied)| HypothesisCount {
                name: name.to_string(),
                satisfied,
            })
            .collect(),
        witnesses,
        counterexamples,
        partial: timed_out || truncated_by_budget,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

/// Classify every element of a finite carrier.
pub fn classify_carrier(spec: &CarrierSpec, limits: &Limits) -> Result<ClassifyReport> {
    let started = Instant::now();
    let mut report = ClassifyReport {
        carrier: spec.clone(),
        elements: 0,
        units: 0,
        hermitian: 0,
        idempotents: 0,
        nilpotents: 0,
        mp_invertible: 0,
        group_invertible: 0,
        core_invertible: 0,
        drazin_index_histogram: BTreeMap::new(),
        elapsed_ms: 0,
    };
    for a in enumerate_carrier(spec, limits)? {
        let class = classify_element(&a, limits)?;
        report.elements += 1;
        report.units += class.unit as u64;
        report.hermitian += class.hermitian as u64;
        report.idempotents += class.idempotent as u64;
        report.nilpotents += class.nilpotent as u64;
        report.mp_invertible += class.mp_invertible as u64;
        report.group_invertible += class.group_invertible as u64;
        report.core_invertible += class.core_invertible as u64;
        if let Some(k) = class.drazin_index {
            *report.drazin_index_histogram.entry(k).or_insert(0) += 1;
        }
    }
    report.elapsed_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}

/// Pretty JSON with a trailing newline: the canonical on-disk report
/// form (stable key order, LF line endings).
pub fn report_to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serialization cannot fail");
    s.push('\n');
    s
}

/// CSV summary of a law-mining report: a fixed header plus one row.
pub fn report_to_csv(report: &MiningReport) -> String {
    let job = &report.job;
    let law = match &job.task {
        JobTask::Law { law } => law.name().to_string(),
        JobTask::Classify => "classify".to_string(),
    };
    let (mode, seed, samples) = match &job.mode {
        MiningMode::Exhaustive => ("exhaustive".to_string(), String::new(), String::new()),
        MiningMode::Random { seed, samples } => {
            ("random".to_string(), seed.to_string(), samples.to_string())
        }
    };
    let spec = &job.carrier;
    let domain = match spec.domain {
        crate::carrier::ScalarDomain::Rational => "Q",
        crate::carrier::ScalarDomain::GaussianRational => "QI",
        crate::carrier::ScalarDomain::IntegersModN => "ZN",
    };
    let mut out = String::from(
        "law,domain,dim,modulus,mode,seed,samples,inputs,hypothesis_satisfying,vacuous,conclusion_true,counterexamples,partial,elapsed_ms\n",
    );
    out.push_str(&format!(
        "{law},{domain},{dim},{modulus},{mode},{seed},{samples},{inputs},{hyp},{vac},{concl},{cex},{partial},{elapsed}\n",
        dim = spec.dim,
        modulus = spec.modulus.map(|m| m.to_string()).unwrap_or_default(),
        inputs = report.totals.inputs,
        hyp = report.totals.hypothesis_satisfying,
        vac = report.totals.vacuous,
        concl = report.totals.conclusion_true,
        cex = report.totals.counterexamples,
        partial = report.partial,
        elapsed = report.elapsed_ms,
    ));
    out
}

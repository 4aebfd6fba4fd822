//! Instance-level verification of the strength/dual-weight identities and
//! the search over attainable `(Str(C), Str(C'))` pairs.
//!
//! Every check recomputes both sides independently: strengths come from
//! direct orthogonal-array counting, the other side from enumerated duals
//! (and, for Gray images, also from the MacWilliams transform).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerators::{check_lee_macwilliams, dual_distance};
use crate::error::{Error, Result};
use crate::gray::gray_image;
use crate::oa::strength;
use crate::ring::{annihilator_size_violation, enumerate_codes, FiniteRing, RingCode};
use crate::z4::{random_z4_code, standard_form_by_index, standard_form_count, Z4Code, Z4Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// `Str(C) = w_H(C^perp) - 1` over any finite commutative ring.
    DelsarteRing,
    /// `Str(C') = w_L(C^perp) - 1` for the Gray image of a `Z4` code.
    GrayStrength,
    /// `t <= Str(C') <= 2t + 1` where `t = Str(C)`.
    StrengthBounds,
    /// `|C^perp| = |R|^n / |C|` when `|ann(I)| = |R| / |I|` for all ideals.
    DualSize,
    /// MacWilliams identity for Lee weight enumerators.
    LeeMacWilliams,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::DelsarteRing => "delsarte-ring",
            Theorem::GrayStrength => "gray-strength",
            Theorem::StrengthBounds => "strength-bounds",
            Theorem::DualSize => "dual-size",
            Theorem::LeeMacWilliams => "lee-macwilliams",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The ring does not satisfy the theorem's hypothesis; not a failure.
    HypothesisNotMet,
}

/// Enough to rebuild the code a report talks about.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub ring: String,
    pub n: usize,
    pub generators: Vec<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
}

impl Instance {
    pub fn of_ring_code(c: &RingCode) -> Self {
        Instance { ring: c.ring().name().to_string(), n: c.length(), generators: c.generators().to_vec(), seed: None }
    }

    pub fn of_z4(c: &Z4Code, seed: Option<u64>) -> Self {
        Instance {
            ring: "Z4".into(),
            n: c.length(),
            generators: c.generators().iter().map(|g| g.symbols().to_vec()).collect(),
            seed,
        }
    }

    pub fn ring_code(&self) -> Result<RingCode> {
        RingCode::from_generators(&FiniteRing::parse(&self.ring)?, self.n, &self.generators)
    }

    pub fn z4_code(&self) -> Result<Z4Code> {
        Z4Code::from_rows(self.n, &self.generators)
    }
}

impl std::fmt::Display for Instance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let gens: Vec<String> =
            self.generators.iter().map(|g| g.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "{} n={} gens=[{}]", self.ring, self.n, gens.join("; "))?;
        if let Some(s) = self.seed {
            write!(f, " seed={s}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: Theorem,
    pub instance: Instance,
    pub lhs: u64,
    pub rhs: u64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    pub const TSV_HEADER: &'static str = "theorem\tinstance\tlhs\trhs\tverdict\tnotes";

    pub fn tsv_row(&self) -> String {
        let verdict = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::HypothesisNotMet => "hypothesis-not-met",
        };
        let mut notes = self.notes.join("; ");
        if let Some(w) = &self.witness {
            let _ = write!(notes, "{}witness: {w}", if notes.is_empty() { "" } else { "; " });
        }
        format!("{}\t{}\t{}\t{}\t{}\t{}", self.theorem.name(), self.instance, self.lhs, self.rhs, verdict, notes)
    }
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// `Str(C)` by direct counting against `w_H(C^perp) - 1`.
pub fn verify_delsarte_ring(c: &RingCode) -> Result<TheoremReport> {
    let report = strength(&c.to_array())?;
    let dual = c.dual()?;
    let rhs = dual.min_hamming_weight() - 1;
    let ok = report.strength == rhs;
    Ok(TheoremReport {
        theorem: Theorem::DelsarteRing,
        instance: Instance::of_ring_code(c),
        lhs: report.strength as u64,
        rhs: rhs as u64,
        verdict: verdict(ok),
        witness: (!ok).then(|| format!("strength report {report:?}; dual size {}", dual.size())),
        notes: vec![],
    })
}

/// `Str(C')` by direct counting against `w_L(C^perp) - 1`, and against the
/// dual distance of `C'` from its MacWilliams transform.
pub fn verify_gray_strength(c: &Z4Code) -> Result<TheoremReport> {
    verify_gray_strength_seeded(c, None)
}

fn verify_gray_strength_seeded(c: &Z4Code, seed: Option<u64>) -> Result<TheoremReport> {
    let image = gray_image(c);
    let direct = strength(&image.to_array())?.strength;
    let dual = c.dual()?;
    let rhs = dual.min_lee_weight() - 1;
    let via_transform = dual_distance::<i128>(&image)? - 1;
    let ok = direct == rhs && via_transform == rhs;
    Ok(TheoremReport {
        theorem: Theorem::GrayStrength,
        instance: Instance::of_z4(c, seed),
        lhs: direct as u64,
        rhs: rhs as u64,
        verdict: verdict(ok),
        witness: (!ok).then(|| format!("direct {direct}, w_L(dual) - 1 = {rhs}, dual distance - 1 = {via_transform}")),
        notes: vec![format!("dual-distance-route={via_transform}")],
    })
}

/// Whether `t >= 1` and `t' > 2t - 1`, i.e. the pair lies above the weaker
/// upper bound `2t - 1`. For `t = 0` that bound is vacuous and not reported.
pub fn exceeds_weak_bound(t: usize, t_gray: usize) -> bool {
    t >= 1 && t_gray >= 2 * t
}

/// `t <= Str(C') <= 2t + 1` and `t + 1 <= w_L(C^perp) <= 2t + 2`.
pub fn verify_strength_bounds(c: &Z4Code) -> Result<TheoremReport> {
    verify_strength_bounds_seeded(c, None)
}

fn verify_strength_bounds_seeded(c: &Z4Code, seed: Option<u64>) -> Result<TheoremReport> {
    let t = strength(&c.to_array())?.strength;
    let t_gray = strength(&gray_image(c).to_array())?.strength;
    let lee = c.dual()?.min_lee_weight();
    let bounds = t <= t_gray && t_gray <= 2 * t + 1;
    let chain = t < lee && lee <= 2 * t + 2;
    let mut notes = vec![format!("t={t} t'={t_gray} w_L(dual)={lee}")];
    if exceeds_weak_bound(t, t_gray) {
        notes.push(format!("t' = {t_gray} exceeds 2t - 1 = {}", 2 * t - 1));
    }
    Ok(TheoremReport {
        theorem: Theorem::StrengthBounds,
        instance: Instance::of_z4(c, seed),
        lhs: t_gray as u64,
        rhs: t as u64,
        verdict: verdict(bounds && chain),
        witness: (!(bounds && chain)).then(|| format!("bounds hold: {bounds}, chain holds: {chain}")),
        notes,
    })
}

/// `|C| |C^perp| = |R|^n`, reported as not applicable when some ideal has
/// `|ann(I)| |I| != |R|`.
pub fn verify_dual_size(c: &RingCode) -> Result<TheoremReport> {
    let ring = c.ring();
    let dual = c.dual()?;
    let lhs = (c.size() * dual.size()) as u64;
    let rhs = ring.space_size(c.length()).ok_or_else(|| Error::Size("|R|^n overflows".into()))?;
    let identity = lhs == rhs;
    let (verdict, notes) = match annihilator_size_violation(ring)? {
        None => (verdict(identity), vec![]),
        Some((ideal, ann)) => (
            Verdict::HypothesisNotMet,
            vec![
                format!(
                    "ideal {{{}}} has |ann(I)| = {} but |R|/|I| = {}",
                    ideal.labels(ring).join(","),
                    ann.size(),
                    ring.order() / ideal.size()
                ),
                format!("size identity {} for this code", if identity { "holds" } else { "fails" }),
            ],
        ),
    };
    Ok(TheoremReport {
        theorem: Theorem::DualSize,
        instance: Instance::of_ring_code(c),
        lhs,
        rhs,
        verdict,
        witness: (verdict == Verdict::Fail).then(|| format!("|C| = {}, |C^perp| = {}", c.size(), dual.size())),
        notes,
    })
}

pub fn verify_lee_macwilliams(c: &Z4Code) -> Result<TheoremReport> {
    let r = check_lee_macwilliams::<i128>(c)?;
    let (lhs, rhs) = match &r.first_difference {
        Some((_, l, e)) => (*l as u64, *e as u64),
        None => (0, 0),
    };
    Ok(TheoremReport {
        theorem: Theorem::LeeMacWilliams,
        instance: Instance::of_z4(c, None),
        lhs,
        rhs,
        verdict: verdict(r.holds),
        witness: r.first_difference.map(|(j, l, e)| format!("coefficient of y^{j}: {l} vs {e}")),
        notes: vec![],
    })
}

/// Aggregate of a batch of verifications.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepOutcome {
    pub label: String,
    pub codes_checked: usize,
    pub checks_run: usize,
    pub counts: BTreeMap<String, usize>,
    pub failures: Vec<TheoremReport>,
    pub hypothesis_not_met: usize,
    pub first_hypothesis_flag: Option<TheoremReport>,
    /// Codes where the dual-size identity fails while the hypothesis fails.
    pub dual_size_counterexamples: Vec<Instance>,
    /// First strength-bounds report whose pair exceeds `2t - 1`.
    pub weak_bound_witness: Option<TheoremReport>,
}

impl SweepOutcome {
    fn absorb(&mut self, reports: Vec<TheoremReport>) {
        self.codes_checked += 1;
        for r in reports {
            self.checks_run += 1;
            *self.counts.entry(r.theorem.name().to_string()).or_default() += 1;
            match r.verdict {
                Verdict::Fail => self.failures.push(r),
                Verdict::HypothesisNotMet => {
                    self.hypothesis_not_met += 1;
                    if r.lhs != r.rhs {
                        self.dual_size_counterexamples.push(r.instance.clone());
                    }
                    if self.first_hypothesis_flag.is_none() {
                        self.first_hypothesis_flag = Some(r);
                    }
                }
                Verdict::Pass => {
                    if r.theorem == Theorem::StrengthBounds
                        && self.weak_bound_witness.is_none()
                        && exceeds_weak_bound(r.rhs as usize, r.lhs as usize)
                    {
                        self.weak_bound_witness = Some(r);
                    }
                }
            }
        }
    }

    pub fn merge(&mut self, other: SweepOutcome) {
        self.codes_checked += other.codes_checked;
        self.checks_run += other.checks_run;
        for (k, v) in other.counts {
            *self.counts.entry(k).or_default() += v;
        }
        self.failures.extend(other.failures);
        self.hypothesis_not_met += other.hypothesis_not_met;
        if self.first_hypothesis_flag.is_none() {
            self.first_hypothesis_flag = other.first_hypothesis_flag;
        }
        self.dual_size_counterexamples.extend(other.dual_size_counterexamples);
        if self.weak_bound_witness.is_none() {
            self.weak_bound_witness = other.weak_bound_witness;
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn z4_reports(c: &Z4Code, seed: Option<u64>) -> Result<Vec<TheoremReport>> {
    Ok(vec![verify_gray_strength_seeded(c, seed)?, verify_strength_bounds_seeded(c, seed)?, verify_lee_macwilliams(c)?])
}

/// Every code over `ring` of length `1..=n_max` spanned by at most
/// `max_generators` words (`None`: every submodule), checked against all
/// applicable identities.
pub fn exhaustive_small_sweep(ring: &FiniteRing, n_max: usize, max_generators: Option<usize>) -> Result<SweepOutcome> {
    let is_z4 = ring == &FiniteRing::zn(4)?;
    let mut outcome = SweepOutcome {
        label: format!("{ring} n<={n_max} generators<={}", max_generators.map_or("any".to_string(), |g| g.to_string())),
        ..Default::default()
    };
    for n in 1..=n_max {
        let codes = enumerate_codes(ring, n, max_generators)?;
        let batches = codes
            .par_iter()
            .map(|c| -> Result<Vec<TheoremReport>> {
                let mut reports = vec![verify_delsarte_ring(c)?, verify_dual_size(c)?];
                if is_z4 {
                    reports.extend(z4_reports(&Z4Code::from_ring_code(c)?, None)?);
                }
                Ok(reports)
            })
            .collect::<Result<Vec<_>>>()?;
        batches.into_iter().for_each(|b| outcome.absorb(b));
    }
    Ok(outcome)
}

/// `count` random standard-form `Z4` codes with `1 <= n <= n_max`.
pub fn random_z4_sweep(count: usize, n_max: usize, seed: u64) -> Result<SweepOutcome> {
    if n_max == 0 {
        return Err(Error::OutOfRange("n_max must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tasks: Vec<(usize, usize, usize, u64)> = (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=n_max);
            let k1 = rng.gen_range(0..=n);
            let k2 = rng.gen_range(0..=n - k1);
            (n, k1, k2, rng.gen())
        })
        .collect();
    let batches = tasks
        .par_iter()
        .map(|&(n, k1, k2, s)| z4_reports(&random_z4_code(n, k1, k2, s)?, Some(s)))
        .collect::<Result<Vec<_>>>()?;
    let mut outcome =
        SweepOutcome { label: format!("{count} random Z4 codes n<={n_max} seed={seed}"), ..Default::default() };
    batches.into_iter().for_each(|b| outcome.absorb(b));
    Ok(outcome)
}

/// Code that realizes a strength pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairWitness {
    pub n: usize,
    pub k1: usize,
    pub k2: usize,
    /// Seed given to the random generator, when the code was sampled.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub generators: Vec<Z4Word>,
}

impl PairWitness {
    pub fn code(&self) -> Result<Z4Code> {
        Z4Code::from_matrix(self.n, &self.generators)
    }

    /// Recomputes both strengths from the generators alone.
    pub fn strengths(&self) -> Result<(usize, usize)> {
        let c = self.code()?;
        Ok((strength(&c.to_array())?.strength, strength(&gray_image(&c).to_array())?.strength))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairEntry {
    pub t: usize,
    pub t_gray: usize,
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<PairWitness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub n_max: usize,
    pub samples_per_shape: usize,
    pub seed: u64,
    /// Lengths up to this one enumerate every standard-form matrix instead
    /// of sampling, so the recorded witnesses have the smallest length.
    pub exhaustive_n: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { n_max: 4, samples_per_shape: 32, seed: 0, exhaustive_n: 0 }
    }
}

/// Coverage of the pairs `t <= t' <= 2t + 1`, `t <= n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairTable {
    pub config: SearchConfig,
    pub codes_examined: usize,
    pub entries: Vec<PairEntry>,
    /// Observed pairs outside `t <= t' <= 2t + 1` (never expected).
    pub out_of_bounds: Vec<PairEntry>,
}

impl PairTable {
    pub fn entry(&self, t: usize, t_gray: usize) -> Option<&PairEntry> {
        self.entries.iter().find(|e| e.t == t && e.t_gray == t_gray)
    }

    pub fn found_pairs(&self) -> Vec<(usize, usize)> {
        self.entries.iter().filter(|e| e.found).map(|e| (e.t, e.t_gray)).collect()
    }

    /// Rebuilds every recorded witness and recomputes its pair.
    pub fn revalidate(&self) -> Result<Vec<(usize, usize)>> {
        let mut bad = Vec::new();
        for e in self.entries.iter().chain(&self.out_of_bounds) {
            if let Some(w) = &e.witness {
                if w.strengths()? != (e.t, e.t_gray) {
                    bad.push((e.t, e.t_gray));
                }
            } else if e.found {
                bad.push((e.t, e.t_gray));
            }
        }
        Ok(bad)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("t\tt_gray\tfound\tn\tk1\tk2\tseed\tgenerators\n");
        for e in &self.entries {
            match &e.witness {
                Some(w) => {
                    let gens: Vec<String> = w.generators.iter().map(|g| g.to_string()).collect();
                    let seed = w.seed.map_or("-".to_string(), |s| s.to_string());
                    let _ = writeln!(
                        out,
                        "{}\t{}\tyes\t{}\t{}\t{}\t{seed}\t{}",
                        e.t,
                        e.t_gray,
                        w.n,
                        w.k1,
                        w.k2,
                        gens.join(",")
                    );
                }
                None => {
                    let _ = writeln!(out, "{}\t{}\tno\t-\t-\t-\t-\t-", e.t, e.t_gray);
                }
            }
        }
        out
    }
}

struct Candidate {
    n: usize,
    k1: usize,
    k2: usize,
    seed: Option<u64>,
    index: Option<u128>,
}

/// Searches standard-form codes of every shape `(n, k1, k2)`, `n <= n_max`,
/// recording the first code (in iteration order) realizing each pair.
pub fn search_pairs(config: &SearchConfig) -> Result<PairTable> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut candidates = Vec::new();
    for n in 1..=config.n_max {
        for k1 in 0..=n {
            for k2 in 0..=n - k1 {
                if n <= config.exhaustive_n {
                    for index in 0..standard_form_count(n, k1, k2) {
                        candidates.push(Candidate { n, k1, k2, seed: None, index: Some(index) });
                    }
                } else {
                    for _ in 0..config.samples_per_shape {
                        candidates.push(Candidate { n, k1, k2, seed: Some(rng.gen()), index: None });
                    }
                }
            }
        }
    }
    let results = candidates
        .par_iter()
        .map(|cand| -> Result<(PairWitness, (usize, usize))> {
            let code = match (cand.seed, cand.index) {
                (Some(s), _) => random_z4_code(cand.n, cand.k1, cand.k2, s)?,
                (None, Some(i)) => Z4Code::from_matrix(cand.n, &standard_form_by_index(cand.n, cand.k1, cand.k2, i)?)?,
                (None, None) => unreachable!(),
            };
            let w = PairWitness {
                n: cand.n,
                k1: cand.k1,
                k2: cand.k2,
                seed: cand.seed,
                generators: code.generators().to_vec(),
            };
            let pair = (strength(&code.to_array())?.strength, strength(&gray_image(&code).to_array())?.strength);
            Ok((w, pair))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut first: BTreeMap<(usize, usize), PairWitness> = BTreeMap::new();
    for (w, pair) in results {
        first.entry(pair).or_insert(w);
    }
    let in_bounds = |t: usize, tg: usize| t <= tg && tg <= 2 * t + 1;
    let mut entries = Vec::new();
    for t in 0..=config.n_max {
        for t_gray in t..=2 * t + 1 {
            let witness = first.get(&(t, t_gray)).cloned();
            entries.push(PairEntry { t, t_gray, found: witness.is_some(), witness });
        }
    }
    let out_of_bounds = first
        .iter()
        .filter(|((t, tg), _)| !in_bounds(*t, *tg) || *t > config.n_max)
        .map(|(&(t, t_gray), w)| PairEntry { t, t_gray, found: true, witness: Some(w.clone()) })
        .collect();
    Ok(PairTable { config: *config, codes_examined: candidates.len(), entries, out_of_bounds })
}

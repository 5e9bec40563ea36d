//! Greedy `λ`-chains: grow `B ⊆ A` one element at a time, always taking the element
//! that adds the most new subset sums, and record every step so the run can be replayed.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec};
use crate::setops::{best_increment, deficiency_in_group, lambda, sigma_of, ElementSet};

/// When to stop growing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopRule {
    /// Stop once `|Σ(B)| >= k`.
    SpanAtLeast(usize),
    /// Stop once `|Σ(B)| > k`.
    SpanAbove(usize),
    /// Use every element of the ground set.
    Exhaust,
}

impl StopRule {
    pub fn is_met(&self, span: usize) -> bool {
        match *self {
            StopRule::SpanAtLeast(k) => span >= k,
            StopRule::SpanAbove(k) => span > k,
            StopRule::Exhaust => false,
        }
    }

    /// Smallest span size satisfying the rule.
    pub fn target(&self) -> Option<usize> {
        match *self {
            StopRule::SpanAtLeast(k) => Some(k),
            StopRule::SpanAbove(k) => Some(k + 1),
            StopRule::Exhaust => None,
        }
    }
}

/// How stage transitions are marked on a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StageSchedule {
    /// `t₁`: `g(t) >= (|A|-t)/2`; `t₂`: `g(t) >= 9n^{3/4}/8`; `t₃`: `g(t) > n/2`.
    ThreeStage,
    /// `t₁` as above, then one mark each time `g` doubles past `g(t₁)`, then `t₃`.
    /// Diagnostic only; carries no certified bound.
    Doubling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrowthStep {
    pub element: Element,
    pub lambda: usize,
    /// `|Σ(B)|` after adding `element`.
    pub span: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthCertificate {
    pub group: GroupSpec,
    pub ground_set: ElementSet,
    pub steps: Vec<GrowthStep>,
    pub stop: StopRule,
    /// Step counts `t` at which each stage began; `-1` if never reached.
    pub stage_marks: Vec<i64>,
    pub schedule: Option<StageSchedule>,
    pub final_span: usize,
    pub target: Option<usize>,
    pub reached: bool,
}

impl GrowthCertificate {
    /// `g(t)` along the chain: `spans()[t]` is `|Σ|` after `t` steps, `spans()[0] = 1`.
    pub fn spans(&self) -> Vec<usize> {
        std::iter::once(1).chain(self.steps.iter().map(|s| s.span)).collect()
    }

    pub fn chosen(&self) -> Vec<Element> {
        self.steps.iter().map(|s| s.element).collect()
    }

    pub fn span_set(&self) -> ElementSet {
        sigma_of(&self.group, self.chosen())
    }

    /// Replays the chain from scratch: every recorded span and `λ` is recomputed, each
    /// choice must be a maximiser of `λ` over the elements still unused (smallest index
    /// on ties), and the stop rule must match.
    pub fn verify(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Verification(msg));
        let g = &self.group;
        if !self.ground_set.group().same_as(g) {
            return fail("ground set lives in a different group".into());
        }
        let mut remaining = self.ground_set.clone();
        let mut prefix: Vec<Element> = Vec::new();
        let mut prev_span = 1usize;
        for (t, step) in self.steps.iter().enumerate() {
            if !remaining.contains(step.element) {
                return fail(format!("step {}: element {} not available", t + 1, g.format_element(step.element)));
            }
            let before = sigma_of(g, prefix.iter().copied());
            if before.len() != prev_span {
                return fail(format!("step {t}: recorded span {prev_span}, recomputed {}", before.len()));
            }
            if self.stop.is_met(before.len()) {
                return fail(format!("step {}: taken after the stop rule was met", t + 1));
            }
            let (best, best_lambda) = best_increment(&before, &remaining)?;
            if best != step.element || best_lambda != step.lambda || lambda(&before, step.element) != step.lambda {
                return fail(format!("step {}: recorded λ={} is not the greedy choice", t + 1, step.lambda));
            }
            if step.span != prev_span + step.lambda {
                return fail(format!("step {}: span {} != {} + {}", t + 1, step.span, prev_span, step.lambda));
            }
            remaining.remove(step.element);
            prefix.push(step.element);
            prev_span = step.span;
        }
        let after = sigma_of(g, prefix.iter().copied());
        if after.len() != prev_span || after.len() != self.final_span {
            return fail(format!("final span {} but recomputed {}", self.final_span, after.len()));
        }
        if self.reached != self.stop.is_met(self.final_span) {
            return fail("reached flag disagrees with the stop rule".into());
        }
        if !self.reached && !remaining.is_empty() {
            return fail("chain stopped early without meeting the stop rule".into());
        }
        Ok(())
    }
}

/// Greedily grows `B ⊆ A` until `stop` holds or `A` is used up.
pub fn greedy_grow(a: &ElementSet, stop: StopRule) -> Result<GrowthCertificate> {
    let g = a.group();
    if a.contains(g.zero()) {
        return Err(Error::ZeroNotAllowed);
    }
    let mut span = ElementSet::singleton(g, g.zero());
    let mut remaining = a.clone();
    let mut steps = Vec::new();
    let mut scratch = Vec::new();
    while !stop.is_met(span.len()) && !remaining.is_empty() {
        let (c, lam) = best_increment(&span, &remaining)?;
        span.absorb_shift(c, &mut scratch);
        remaining.remove(c);
        steps.push(GrowthStep { element: c, lambda: lam, span: span.len() });
    }
    Ok(GrowthCertificate {
        group: g.clone(),
        ground_set: a.clone(),
        steps,
        stop,
        stage_marks: Vec::new(),
        schedule: None,
        final_span: span.len(),
        target: stop.target(),
        reached: stop.is_met(span.len()),
    })
}

fn first_index(spans: &[usize], pred: impl Fn(usize, usize) -> bool) -> i64 {
    spans
        .iter()
        .enumerate()
        .find(|&(t, &g)| pred(t, g))
        .map_or(-1, |(t, _)| t as i64)
}

/// `g >= 9 n^{3/4} / 8`, decided exactly as `(8g)^4 >= 9^4 n^3`.
pub(crate) fn meets_stage_two(g: usize, n: u64) -> bool {
    let lhs = BigUint::from(8 * g as u64).pow(4);
    let rhs = BigUint::from(9u32).pow(4) * BigUint::from(n).pow(3);
    lhs >= rhs
}

/// Stage transition points of a chain in `Z_n`.
pub fn stage_marks(cert: &GrowthCertificate, n: u64, schedule: StageSchedule) -> Vec<i64> {
    let spans = cert.spans();
    let size = cert.ground_set.len();
    let t1 = first_index(&spans, |t, g| 2 * g + t >= size);
    let t3 = first_index(&spans, |_, g| 2 * g as u64 > n);
    match schedule {
        StageSchedule::ThreeStage => {
            let t2 = first_index(&spans, |_, g| meets_stage_two(g, n));
            vec![t1, t2, t3]
        }
        StageSchedule::Doubling => {
            let mut marks = vec![t1];
            if t1 >= 0 {
                let base = spans[t1 as usize];
                let mut level = base * 2;
                while (level as u64) * 2 <= n {
                    let lv = level;
                    let t = first_index(&spans, |_, g| g >= lv);
                    marks.push(t);
                    if t < 0 {
                        break;
                    }
                    level *= 2;
                }
            }
            marks.push(t3);
            marks
        }
    }
}

/// Attaches stage marks to a certificate.
pub fn annotate_stages(cert: &mut GrowthCertificate, n: u64, schedule: StageSchedule) {
    cert.stage_marks = stage_marks(cert, n, schedule);
    cert.schedule = Some(schedule);
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditRow {
    pub stage: u8,
    pub check: String,
    /// Steps where the check's hypothesis held.
    pub steps_checked: usize,
    pub violations: usize,
    pub held: bool,
    pub observed: Option<f64>,
    pub bound: Option<f64>,
}

fn lemma_row(stage: u8, check: &str, results: impl Iterator<Item = Option<bool>>) -> AuditRow {
    let (mut checked, mut violations) = (0, 0);
    for r in results.flatten() {
        checked += 1;
        violations += (!r) as usize;
    }
    AuditRow { stage, check: check.into(), steps_checked: checked, violations, held: violations == 0, observed: None, bound: None }
}

fn bound_row(stage: u8, check: &str, observed: Option<f64>, bound: f64, holds: impl Fn(f64, f64) -> bool) -> AuditRow {
    let held = observed.is_some_and(|o| holds(o, bound));
    AuditRow {
        stage,
        check: check.into(),
        steps_checked: observed.is_some() as usize,
        violations: (observed.is_some() && !held) as usize,
        held,
        observed,
        bound: Some(bound),
    }
}

/// Records whether each stage's growth inequalities held along an actual run in `Z_n`.
///
/// These are guaranteed only under the asymptotic hypotheses (`n >= n₀`); the audit
/// observes and never asserts.
pub fn stage_bound_audit(cert: &GrowthCertificate, n: u64) -> Vec<AuditRow> {
    let marks = match cert.schedule {
        Some(StageSchedule::ThreeStage) => cert.stage_marks.clone(),
        _ => stage_marks(cert, n, StageSchedule::ThreeStage),
    };
    let (t1, t2, t3) = (marks[0], marks[1], marks[2]);
    let spans = cert.spans();
    let size = cert.ground_set.len();
    let steps = cert.steps.len() as i64;
    let end = |m: i64| if m < 0 { steps } else { m.min(steps) };
    let s1 = 0..end(t1);
    let s2 = t1.max(0).min(steps)..end(t2).max(t1.max(0));
    let s3 = t2.max(0).min(steps)..end(t3).max(t2.max(0));
    let group_order = cert.group.order();
    let state = |t: i64| {
        let t = t as usize;
        let s = spans[t];
        let def = s.min(group_order - s);
        (t, s, def, size - t, cert.steps[t].lambda)
    };
    let nb = BigUint::from(n);
    let pow4 = |x: usize| BigUint::from(x as u64).pow(4);
    let mut rows = Vec::new();

    // Stage 1: 2 def <= |C|  =>  λ >= def/2
    if t1 != 0 {
        rows.push(lemma_row(
            1,
            "lambda >= def/2 when def <= |C|/2",
            s1.clone().map(state).map(|(_, _, def, c, lam)| (2 * def <= c).then_some(2 * lam >= def)),
        ));
        // g(t) >= 2 (3/2)^{t-1} for 1 <= t <= t1
        rows.push(lemma_row(
            1,
            "g(t) >= 2(3/2)^(t-1)",
            (1..=end(t1).min(steps)).map(|t| {
                let t = t as u32;
                let g = BigUint::from(spans[t as usize] as u64);
                Some(g * BigUint::from(2u32).pow(t - 1) >= BigUint::from(2u32) * BigUint::from(3u32).pow(t - 1))
            }),
        ));
    }
    // Stage 2: 2 def >= |C|  =>  8 λ >= |C|; growth g(t+1) >= g(t) + √n/8
    rows.push(lemma_row(
        2,
        "lambda >= |C|/8 when def >= |C|/2",
        s2.clone().map(state).map(|(_, _, def, c, lam)| (2 * def >= c && c > 0).then_some(8 * lam >= c)),
    ));
    rows.push(lemma_row(
        2,
        "g(t+1) >= g(t) + sqrt(n)/8",
        s2.clone().map(state).map(|(_, _, _, _, lam)| Some(BigUint::from(64 * (lam as u64) * lam as u64) >= nb)),
    ));
    // Stage 3: def >= n^{1/4}|C|  =>  λ >= (1 - 4n^{-1/4})|C|
    let strong = |lam: usize, c: usize| lam >= c || pow4(c - lam) * &nb <= pow4(4 * c);
    rows.push(lemma_row(
        3,
        "lambda >= (1-4n^-1/4)|C| when def >= n^1/4|C|",
        s3.clone().map(state).map(|(_, _, def, c, lam)| {
            (c > 0 && pow4(def) >= &nb * pow4(c)).then(|| strong(lam, c))
        }),
    ));
    if t2 >= 0 && (t2 as usize) < spans.len() {
        let g2 = spans[t2 as usize];
        rows.push(lemma_row(
            3,
            "g(t+1) >= g(t2) + (1-4n^-1/4) sum(|A|-t')",
            s3.clone().map(|t| {
                let t = t as usize;
                let total: usize = (t2 as usize..=t).map(|tp| size - tp).sum();
                let gained = spans[t + 1] - g2;
                Some(gained >= total || pow4(total - gained) * &nb <= pow4(4 * total))
            }),
        ));
    }

    let nf = n as f64;
    let opt = |m: i64| (m >= 0).then_some(m as f64);
    rows.push(bound_row(1, "t1 <= log_1.5(|A|)", opt(t1), (size.max(1) as f64).ln() / 1.5f64.ln(), |o, b| o <= b));
    let t1f = t1.max(0) as f64;
    rows.push(bound_row(2, "t2 <= t1 + 9n^1/4", opt(t2), t1f + 9.0 * nf.powf(0.25), |o, b| o <= b));
    rows.push(bound_row(3, "t3 <= sqrt(n) + 10n^1/4", opt(t3), nf.sqrt() + 10.0 * nf.powf(0.25), |o, b| o <= b));
    rows.push(bound_row(
        3,
        "|A| - t2 >= sqrt(n) + 5n^1/4",
        (t2 >= 0).then_some(size as f64 - t2 as f64),
        nf.sqrt() + 5.0 * nf.powf(0.25),
        |o, b| o >= b,
    ));
    rows
}

/// Deficiency of the current span against the whole group at each step.
pub fn deficiency_trace(cert: &GrowthCertificate) -> Vec<usize> {
    let g = &cert.group;
    let mut span = ElementSet::singleton(g, g.zero());
    let mut scratch = Vec::new();
    let mut out = vec![deficiency_in_group(&span)];
    for s in &cert.steps {
        span.absorb_shift(s.element, &mut scratch);
        out.push(deficiency_in_group(&span));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    #[test]
    fn z10_example() {
        let g = make_group(&[10]).unwrap();
        let a = ElementSet::from_indices(&g, [1, 3, 7, 9]).unwrap();
        let cert = greedy_grow(&a, StopRule::SpanAbove(5)).unwrap();
        assert!(cert.final_span >= 6 && cert.reached);
        assert_eq!(cert.chosen().iter().map(|e| e.index()).collect::<Vec<_>>(), vec![1, 3, 7]);
        assert_eq!(cert.spans(), vec![1, 2, 4, 6]);
        assert_eq!(cert.target, Some(6));
        cert.verify().unwrap();
        assert_eq!(cert.span_set().len(), cert.final_span);
    }

    #[test]
    fn trivial_cases() {
        let g = make_group(&[10]).unwrap();
        let a = ElementSet::from_indices(&g, [1, 3]).unwrap();
        let cert = greedy_grow(&a, StopRule::SpanAtLeast(1)).unwrap();
        assert!(cert.steps.is_empty());
        assert_eq!(cert.final_span, 1);
        cert.verify().unwrap();

        let cert = greedy_grow(&ElementSet::empty(&g), StopRule::SpanAbove(5)).unwrap();
        assert!(cert.steps.is_empty() && !cert.reached);
        assert_eq!(cert.final_span, 1);
        cert.verify().unwrap();

        let with_zero = ElementSet::from_indices(&g, [0, 3]).unwrap();
        assert!(greedy_grow(&with_zero, StopRule::Exhaust).is_err());
    }

    #[test]
    fn tampered_certificates_fail_replay() {
        let g = make_group(&[31]).unwrap();
        let a = ElementSet::from_indices(&g, [1, 2, 3, 5, 8]).unwrap();
        let cert = greedy_grow(&a, StopRule::Exhaust).unwrap();
        cert.verify().unwrap();

        let mut bad = cert.clone();
        bad.steps[1].span += 1;
        assert!(matches!(bad.verify(), Err(Error::Verification(_))));

        let mut bad = cert.clone();
        bad.steps.swap(0, 1);
        assert!(bad.verify().is_err());

        let mut bad = cert.clone();
        bad.final_span += 1;
        assert!(bad.verify().is_err());

        let mut bad = cert;
        bad.steps.pop();
        assert!(bad.verify().is_err());
    }

    #[test]
    fn stage_two_threshold_is_exact() {
        // 9 * 16^{3/4} / 8 = 9
        assert!(meets_stage_two(9, 16));
        assert!(!meets_stage_two(8, 16));
        // 9 * 10000^{3/4} / 8 = 1125
        assert!(meets_stage_two(1125, 10_000));
        assert!(!meets_stage_two(1124, 10_000));
    }

    #[test]
    fn stage_marks_on_a_simple_run() {
        let n = 1009u64;
        let g = make_group(&[n]).unwrap();
        let a = ElementSet::from_indices(&g, 1..=60).unwrap();
        let mut cert = greedy_grow(&a, StopRule::SpanAbove(n as usize / 2)).unwrap();
        annotate_stages(&mut cert, n, StageSchedule::ThreeStage);
        let spans = cert.spans();
        let [t1, t2, t3] = [cert.stage_marks[0], cert.stage_marks[1], cert.stage_marks[2]];
        assert!(t1 >= 0 && t2 >= t1 && t3 >= t2);
        let t1 = t1 as usize;
        assert!(2 * spans[t1] + t1 >= 60);
        assert!(t1 == 0 || 2 * spans[t1 - 1] + t1 - 1 < 60);
        assert!(2 * spans[t3 as usize] > n as usize);
        assert!(meets_stage_two(spans[t2 as usize], n) && !meets_stage_two(spans[t2 as usize - 1], n));
        let rows = stage_bound_audit(&cert, n);
        assert!(rows.iter().any(|r| r.stage == 3));
        assert!(rows.iter().all(|r| r.violations <= r.steps_checked));

        let mut dbl = cert.clone();
        annotate_stages(&mut dbl, n, StageSchedule::Doubling);
        assert_eq!(dbl.stage_marks.first(), cert.stage_marks.first());
        assert_eq!(dbl.stage_marks.last(), cert.stage_marks.last());
        assert!(dbl.stage_marks.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn deficiency_trace_tracks_span() {
        let g = make_group(&[11]).unwrap();
        let a = ElementSet::from_indices(&g, [1, 2, 3]).unwrap();
        let cert = greedy_grow(&a, StopRule::Exhaust).unwrap();
        let spans = cert.spans();
        let defs = deficiency_trace(&cert);
        for (s, d) in spans.iter().zip(&defs) {
            assert_eq!(*d, (*s).min(11 - s));
        }
    }
}

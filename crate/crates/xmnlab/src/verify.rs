//! The end-to-end bound verification: for a group outside a class, compute
//! n*(m), confirm |G| ≤ (2/(1−γ))^m (n*−1), and trace the four-step
//! inequality chain behind it in exact arithmetic.
//!
//! Chain steps, at t = |G|, n = n*, ℓ = loop count:
//!   1. edge lower bound  η ≥ (1−γ)t²/2, reported both as printed (loops
//!      discarded) and loop-corrected (η ≥ ((1−γ)t² − ℓ)/2)
//!   2. edge upper bound from K_{m,n}-freeness, via the exact threshold
//!   3. combined ratio bound ((n−1)/t)^{1/m} + (m−1)/t ≥ 1−γ
//!   4. simplified root bound ((n−1)/t)^{1/m} ≥ (1−γ)/2, equivalent to the
//!      final group-order bound
//! Steps 3 and 4 are decided in integer-power form; no roots are taken.

use crate::catalog::{catalog_scan, CatalogEntry};
use crate::classes::{class_spec, in_class, ClassId, ClassSpec, SubgroupSet};
use crate::error::Error;
use crate::group::Group;
use crate::kst::{kst_compare, rat_pow, KstQuery};
use crate::xgraph::{XGraph, XmnOutcome};
use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

/// "p/q", or just "p" for integers.
pub fn format_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Fixed six decimals, trailing zeros trimmed. Display only.
pub fn format_float(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// One exact comparison with both sides rendered.
#[derive(Debug, Clone, Serialize)]
pub struct IneqCheck {
    pub holds: bool,
    pub lhs: String,
    pub rhs: String,
}

/// The K_{m,n}-freeness consistency check: a graph satisfying the condition
/// must not strictly exceed the edge threshold. Equality is flagged, not
/// failed.
#[derive(Debug, Clone, Serialize)]
pub struct KstConsistency {
    pub holds: bool,
    pub threshold_met: bool,
    pub boundary: bool,
    /// 2·eta − (m−1)·t.
    pub margin: String,
    pub lhs_pow: Option<String>,
    pub rhs_pow: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Chain {
    pub ineq1_printed: IneqCheck,
    pub ineq1_corrected: IneqCheck,
    pub ineq2: KstConsistency,
    pub ineq3: IneqCheck,
    pub ineq4: IneqCheck,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessOut {
    #[serde(rename = "M")]
    pub m_set: Vec<usize>,
    pub bad_common: Vec<usize>,
}

/// The bound verdict for one (group, class, m) cell.
#[derive(Debug, Clone, Serialize)]
pub struct BoundCheck {
    pub group: String,
    pub order: usize,
    pub class: String,
    pub gamma: String,
    pub m: usize,
    /// The n used for the bound: n*(m) normally, the override when given.
    pub n_star: usize,
    #[serde(rename = "witness_M")]
    pub witness_m: Vec<usize>,
    pub witness: WitnessOut,
    pub bound: String,
    pub bound_float: f64,
    pub holds: bool,
    /// The subgraph guarantee behind step 2 needs m ≤ n.
    pub m_le_n_star: bool,
    /// Universal-constant bound (180/53)^m (n−1); present for
    /// extension-closed classes.
    pub corollary_bound: Option<String>,
    pub corollary_holds: Option<bool>,
    pub chain: Chain,
}

/// Outcome for one m in the requested range.
#[derive(Debug, Clone, Serialize)]
pub struct MEntry {
    pub m: usize,
    /// "checked", "skipped_no_m_subsets", "skipped_cap_exceeded",
    /// "condition_fails_at_n".
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<WitnessOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<BoundCheck>,
}

/// Everything verified for one (group, class) pair.
#[derive(Debug, Clone, Serialize)]
pub struct GroupClassReport {
    pub group: String,
    pub order: usize,
    pub class: String,
    pub gamma: String,
    pub p_x: String,
    pub p_x_float: f64,
    pub in_class: bool,
    /// The bound statement is vacuous when the group lies in the class.
    pub vacuous: bool,
    /// p_X ≤ γ, checked exactly; only meaningful outside the class.
    pub threshold_holds: Option<bool>,
    /// p_X = 1 exactly when the group lies in the class.
    pub probability_one_iff_in_class: bool,
    pub eta: u64,
    pub loops: u64,
    pub bad_ordered: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub checks: Vec<MEntry>,
}

/// Verification knobs; `n_override` replaces n*(m) after confirming the
/// condition still holds at that n.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub m_min: usize,
    pub m_max: usize,
    pub m_cap: usize,
    pub n_override: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            m_min: 1,
            m_max: 3,
            m_cap: 4,
            n_override: None,
        }
    }
}

/// Runs the full pipeline for one group and class.
pub fn verify_group(group: &Group, class: &ClassSpec, opts: &VerifyOptions) -> GroupClassReport {
    let xg = XGraph::build(group, class.clone());
    let p = xg.probability();
    let member = in_class(group, &SubgroupSet::full(group), class.id);
    let mut report = GroupClassReport {
        group: group.name().to_string(),
        order: group.order(),
        class: class.id.to_string(),
        gamma: format_ratio(&class.gamma),
        p_x: format_ratio(&p),
        p_x_float: ratio_to_f64(&p),
        in_class: member,
        vacuous: member,
        threshold_holds: (!member).then(|| p <= class.gamma),
        probability_one_iff_in_class: p.is_one() == member,
        eta: xg.eta(),
        loops: xg.loop_count(),
        bad_ordered: xg.bad_ordered(),
        note: member.then(|| {
            "group lies in the class; the bound statement is vacuous for this pair".to_string()
        }),
        checks: Vec::new(),
    };
    if member {
        return report;
    }
    for m in opts.m_min..=opts.m_max {
        report.checks.push(check_one_m(&xg, class, m, opts));
    }
    report
}

fn check_one_m(xg: &XGraph, class: &ClassSpec, m: usize, opts: &VerifyOptions) -> MEntry {
    let t = xg.order();
    if m > t {
        return MEntry {
            m,
            status: "skipped_no_m_subsets",
            note: Some(format!("no subsets of size {m} in a group of order {t}")),
            violation: None,
            check: None,
        };
    }
    let (n, witness, note) = match opts.n_override {
        None => match xg.n_star(m, opts.m_cap) {
            Ok(ns) => (ns.value, ns.witness, None),
            Err(Error::SubsetCapExceeded { m, cap }) => {
                return MEntry {
                    m,
                    status: "skipped_cap_exceeded",
                    note: Some(format!(
                        "n*({m}) not computed: m exceeds the subset cap {cap}"
                    )),
                    violation: None,
                    check: None,
                };
            }
            Err(e) => unreachable!("m <= |G| was checked: {e}"),
        },
        Some(n) => match xg.satisfies_xmn(m, n) {
            Ok(XmnOutcome::Violated(w)) => {
                return MEntry {
                    m,
                    status: "condition_fails_at_n",
                    note: Some(format!(
                        "the condition fails at the requested n = {n}; the bound does not apply"
                    )),
                    violation: Some(WitnessOut {
                        m_set: w.m_set,
                        bad_common: w.bad_common,
                    }),
                    check: None,
                };
            }
            Ok(_) => {
                // the condition holds at this n, so the bound applies at it;
                // the maximizing witness belongs to n*, not to the override
                let note = format!("n = {n} requested; n*({m}) not computed");
                (
                    n,
                    crate::xgraph::XmnWitness {
                        m_set: Vec::new(),
                        bad_common: Vec::new(),
                    },
                    Some(note),
                )
            }
            Err(e) => {
                return MEntry {
                    m,
                    status: "skipped_cap_exceeded",
                    note: Some(e.to_string()),
                    violation: None,
                    check: None,
                };
            }
        },
    };
    let check = bound_check(xg, class, m, n, witness);
    MEntry {
        m,
        status: "checked",
        note,
        violation: None,
        check: Some(check),
    }
}

fn bound_check(
    xg: &XGraph,
    class: &ClassSpec,
    m: usize,
    n: usize,
    witness: crate::xgraph::XmnWitness,
) -> BoundCheck {
    let t = xg.order();
    let t_rat = BigRational::from(BigInt::from(t));
    let t_sq = t_rat.clone() * t_rat.clone();
    let eta_rat = BigRational::from(BigInt::from(xg.eta()));
    let one_minus_gamma = BigRational::one() - class.gamma.clone();
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));

    // step 1: lower bound on eta from the probability threshold
    let rhs1_printed = one_minus_gamma.clone() * t_sq.clone() * half.clone();
    let rhs1_corrected = (one_minus_gamma.clone() * t_sq
        - BigRational::from(BigInt::from(xg.loop_count())))
        * half;
    let ineq1_printed = IneqCheck {
        holds: eta_rat >= rhs1_printed,
        lhs: xg.eta().to_string(),
        rhs: format_ratio(&rhs1_printed),
    };
    let ineq1_corrected = IneqCheck {
        holds: eta_rat >= rhs1_corrected,
        lhs: xg.eta().to_string(),
        rhs: format_ratio(&rhs1_corrected),
    };

    // step 2: the condition makes the graph K_{m,n}-free, so eta must not
    // strictly exceed the threshold
    let cmp = kst_compare(&KstQuery::new_unchecked(
        t as u64,
        m as u32,
        n as u64,
        xg.eta(),
    ));
    let ineq2 = KstConsistency {
        holds: !cmp.met_strictly,
        threshold_met: cmp.met,
        boundary: cmp.boundary,
        margin: cmp.margin,
        lhs_pow: cmp.lhs_pow,
        rhs_pow: cmp.rhs_pow,
    };

    // step 3: ((n-1)/t)^{1/m} + (m-1)/t >= 1 - gamma, as
    // (n-1)/t >= ((1-gamma) - (m-1)/t)^m when the base is positive
    let a = BigRational::new(BigInt::from(n - 1), BigInt::from(t));
    let c3 = one_minus_gamma.clone()
        - BigRational::new(BigInt::from(m - 1), BigInt::from(t));
    let (holds3, rhs3) = if c3 <= BigRational::zero() {
        (true, BigRational::zero())
    } else {
        let p = rat_pow(&c3, m as u32);
        (a >= p, p)
    };
    let ineq3 = IneqCheck {
        holds: holds3,
        lhs: format_ratio(&a),
        rhs: format_ratio(&rhs3),
    };

    // step 4: ((n-1)/t)^{1/m} >= (1-gamma)/2, as (n-1)/t >= ((1-gamma)/2)^m;
    // equivalent to the final bound
    let rhs4 = rat_pow(
        &(one_minus_gamma * BigRational::new(BigInt::from(1), BigInt::from(2))),
        m as u32,
    );
    let ineq4 = IneqCheck {
        holds: a >= rhs4,
        lhs: format_ratio(&a),
        rhs: format_ratio(&rhs4),
    };

    let bound = rat_pow(&class.bound_base(), m as u32)
        * BigRational::from(BigInt::from(n - 1));
    let holds = BigRational::from(BigInt::from(t)) <= bound;
    debug_assert_eq!(holds, ineq4.holds);

    let (corollary_bound, corollary_holds) = if class.extension_closed {
        let universal = class_spec(ClassId::FittedUniversal);
        let cb = rat_pow(&universal.bound_base(), m as u32)
            * BigRational::from(BigInt::from(n - 1));
        let ch = BigRational::from(BigInt::from(t)) <= cb;
        (Some(format_ratio(&cb)), Some(ch))
    } else {
        (None, None)
    };

    BoundCheck {
        group: xg.group().name().to_string(),
        order: t,
        class: class.id.to_string(),
        gamma: format_ratio(&class.gamma),
        m,
        n_star: n,
        witness_m: witness.m_set.clone(),
        witness: WitnessOut {
            m_set: witness.m_set,
            bad_common: witness.bad_common,
        },
        bound: format_ratio(&bound),
        bound_float: ratio_to_f64(&bound),
        holds,
        m_le_n_star: m <= n,
        corollary_bound,
        corollary_holds,
        chain: Chain {
            ineq1_printed,
            ineq1_corrected,
            ineq2,
            ineq3,
            ineq4,
        },
    }
}

/// Chain consistency: step 2 must hold, and whenever the corrected step 1
/// and step 2 hold, step 3 must follow.
pub fn chain_consistent(chain: &Chain) -> bool {
    chain.ineq2.holds
        && (!(chain.ineq1_corrected.holds && chain.ineq2.holds) || chain.ineq3.holds)
}

#[derive(Debug, Clone, Serialize)]
pub struct Conventions {
    pub probability: &'static str,
    pub loops: &'static str,
    pub subsets: &'static str,
    pub arithmetic: &'static str,
}

pub fn conventions() -> Conventions {
    Conventions {
        probability: "ordered pairs with replacement over G x G",
        loops: "an element is a loop when the cyclic subgroup it generates lies outside \
                the class; the edge lower bound is reported both ignoring loops (printed) \
                and with the loop correction",
        subsets: "M and N may overlap in the condition check; the K_{m,n} search uses \
                  disjoint parts",
        arithmetic: "all bound comparisons are exact rational or integer; floating \
                     columns are display only",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassInfo {
    pub id: String,
    pub gamma: String,
    pub bound_base: String,
    pub subgroup_closed: bool,
    pub quotient_closed: bool,
    pub extension_closed: bool,
    pub provenance: String,
}

pub fn class_info(spec: &ClassSpec) -> ClassInfo {
    ClassInfo {
        id: spec.id.to_string(),
        gamma: format_ratio(&spec.gamma),
        bound_base: format_ratio(&spec.bound_base()),
        subgroup_closed: spec.subgroup_closed,
        quotient_closed: spec.quotient_closed,
        extension_closed: spec.extension_closed,
        provenance: spec.provenance.to_string(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunMeta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub classes: Vec<String>,
    pub m_range: String,
    pub m_cap: usize,
    pub order_cap: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ScanSummary {
    pub groups: usize,
    pub cells: usize,
    pub vacuous_cells: usize,
    pub checked_cells: usize,
    pub bound_checks: usize,
    pub bound_violations: usize,
    pub corollary_violations: usize,
    pub threshold_violations: usize,
    pub probability_one_mismatches: usize,
    pub chain_anomalies: usize,
    pub skipped_checks: usize,
    pub kst_boundary_cases: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub meta: RunMeta,
    pub conventions: Conventions,
    pub registry: Vec<ClassInfo>,
    pub rows: Vec<GroupClassReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<String>,
    pub summary: ScanSummary,
}

impl Report {
    pub fn has_violations(&self) -> bool {
        self.summary.bound_violations > 0
            || self.summary.corollary_violations > 0
            || self.summary.threshold_violations > 0
            || self.summary.probability_one_mismatches > 0
            || self.summary.chain_anomalies > 0
    }
}

/// Aggregates rows into the summary, assuming rows are final.
pub fn summarize(rows: &[GroupClassReport]) -> ScanSummary {
    let mut s = ScanSummary::default();
    let mut groups: Vec<&str> = rows.iter().map(|r| r.group.as_str()).collect();
    groups.sort_unstable();
    groups.dedup();
    s.groups = groups.len();
    s.cells = rows.len();
    for row in rows {
        if row.vacuous {
            s.vacuous_cells += 1;
        } else {
            s.checked_cells += 1;
        }
        if row.threshold_holds == Some(false) {
            s.threshold_violations += 1;
        }
        if !row.probability_one_iff_in_class {
            s.probability_one_mismatches += 1;
        }
        for entry in &row.checks {
            match &entry.check {
                Some(check) => {
                    s.bound_checks += 1;
                    if !check.holds {
                        s.bound_violations += 1;
                    }
                    if check.corollary_holds == Some(false) {
                        s.corollary_violations += 1;
                    }
                    if !chain_consistent(&check.chain) {
                        s.chain_anomalies += 1;
                    }
                    if check.chain.ineq2.boundary {
                        s.kst_boundary_cases += 1;
                    }
                }
                None => s.skipped_checks += 1,
            }
        }
    }
    s
}

/// Scan configuration.
#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub max_order: usize,
    pub classes: Vec<ClassId>,
    pub verify: VerifyOptions,
    pub order_cap: usize,
    pub seed: Option<u64>,
    pub parallel: bool,
}

/// Runs verify_group over the whole catalog cross the selected classes.
/// Rows are sorted by (group, class); parallel and sequential runs produce
/// identical reports.
pub fn run_scan(opts: &ScanOptions) -> Report {
    let entries = catalog_scan(opts.max_order);
    let per_entry = |entry: &CatalogEntry| -> (Vec<GroupClassReport>, Vec<String>) {
        match entry.build(opts.order_cap.max(opts.max_order)) {
            Ok(group) => {
                let rows = opts
                    .classes
                    .iter()
                    .map(|&id| verify_group(&group, &class_spec(id), &opts.verify))
                    .collect();
                (rows, Vec::new())
            }
            Err(e) => (Vec::new(), vec![format!("{}: {e}", entry.name)]),
        }
    };
    let results: Vec<(Vec<GroupClassReport>, Vec<String>)> = if opts.parallel {
        entries.par_iter().map(per_entry).collect()
    } else {
        entries.iter().map(per_entry).collect()
    };
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for (r, e) in results {
        rows.extend(r);
        errors.extend(e);
    }
    rows.sort_by(|a, b| (&a.group, &a.class).cmp(&(&b.group, &b.class)));
    errors.sort();
    let summary = summarize(&rows);
    Report {
        meta: RunMeta {
            tool: "xmnlab",
            version: env!("CARGO_PKG_VERSION"),
            command: "scan".to_string(),
            classes: opts.classes.iter().map(|c| c.to_string()).collect(),
            m_range: format!("{}..{}", opts.verify.m_min, opts.verify.m_max),
            m_cap: opts.verify.m_cap,
            order_cap: opts.order_cap,
            max_order: Some(opts.max_order),
            seed: opts.seed,
        },
        conventions: conventions(),
        registry: opts.classes.iter().map(|&id| class_info(&class_spec(id))).collect(),
        rows,
        errors,
        summary,
    }
}

/// Verifies one group against the selected classes; same report shape as a
/// scan.
pub fn run_verify(
    group: &Group,
    classes: &[ClassId],
    verify: &VerifyOptions,
    order_cap: usize,
) -> Report {
    let mut rows: Vec<GroupClassReport> = classes
        .iter()
        .map(|&id| verify_group(group, &class_spec(id), verify))
        .collect();
    rows.sort_by(|a, b| (&a.group, &a.class).cmp(&(&b.group, &b.class)));
    let summary = summarize(&rows);
    Report {
        meta: RunMeta {
            tool: "xmnlab",
            version: env!("CARGO_PKG_VERSION"),
            command: "verify".to_string(),
            classes: classes.iter().map(|c| c.to_string()).collect(),
            m_range: format!("{}..{}", verify.m_min, verify.m_max),
            m_cap: verify.m_cap,
            order_cap,
            max_order: None,
            seed: None,
        },
        conventions: conventions(),
        registry: classes.iter().map(|&id| class_info(&class_spec(id))).collect(),
        rows,
        errors: Vec::new(),
        summary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_alternating, make_cyclic, make_symmetric};

    #[test]
    fn ratio_formatting() {
        assert_eq!(format_ratio(&BigRational::new(4.into(), 1.into())), "4");
        assert_eq!(format_ratio(&BigRational::new(60.into(), 19.into())), "60/19");
        assert_eq!(format_float(0.5), "0.5");
        assert_eq!(format_float(4.0), "4");
        assert_eq!(format_float(11.0 / 30.0), "0.366667");
    }

    #[test]
    fn vacuous_for_members() {
        let c6 = make_cyclic(6, 100).unwrap();
        let report = verify_group(&c6, &class_spec(ClassId::Nilpotent), &Default::default());
        assert!(report.vacuous && report.in_class);
        assert!(report.checks.is_empty());
        assert_eq!(report.p_x, "1");
        assert!(report.probability_one_iff_in_class);
        assert_eq!(report.threshold_holds, None);
    }

    #[test]
    fn symmetric_on_three_nilpotent_m1() {
        let g = make_symmetric(3, 100).unwrap();
        let report = verify_group(&g, &class_spec(ClassId::Nilpotent), &Default::default());
        assert!(!report.vacuous);
        assert_eq!(report.p_x, "1/2");
        assert_eq!(report.threshold_holds, Some(true));
        let c1 = report.checks[0].check.as_ref().unwrap();
        assert_eq!(c1.m, 1);
        assert_eq!(c1.n_star, 5); // max bad degree 4, at the transpositions
        assert_eq!(c1.bound, "16");
        assert!(c1.holds);
        assert!(c1.corollary_bound.is_none()); // nilpotency is not extension closed
        assert!(chain_consistent(&c1.chain));
        assert!(c1.chain.ineq1_printed.holds); // 9 >= 9: extremal equality
        assert_eq!(c1.chain.ineq1_printed.rhs, "9");
    }

    #[test]
    fn alternating_on_five_soluble_all_m() {
        let g = make_alternating(5, 100).unwrap();
        let report = verify_group(&g, &class_spec(ClassId::Soluble), &Default::default());
        assert_eq!(report.p_x, "11/30");
        assert_eq!(report.threshold_holds, Some(true)); // equality at gamma
        assert_eq!(report.checks.len(), 3);
        for entry in &report.checks {
            let check = entry.check.as_ref().unwrap();
            assert!(check.holds, "m = {}", entry.m);
            assert_eq!(check.corollary_holds, Some(true));
            assert!(check.m_le_n_star);
            assert!(chain_consistent(&check.chain));
        }
    }

    #[test]
    fn loop_correction_shows_up_for_even_order() {
        let c2 = make_cyclic(2, 100).unwrap();
        let report = verify_group(&c2, &class_spec(ClassId::OddOrder), &Default::default());
        assert_eq!(report.p_x, "1/4"); // exactly gamma
        assert_eq!(report.threshold_holds, Some(true));
        assert_eq!((report.eta, report.loops, report.bad_ordered), (1, 1, 3));
        let c1 = report.checks[0].check.as_ref().unwrap();
        assert!(!c1.chain.ineq1_printed.holds); // 1 < 3/2: loops eat the slack
        assert!(c1.chain.ineq1_corrected.holds); // 1 >= 1
        assert!(c1.holds);
        // m = 3 exceeds the order
        assert_eq!(report.checks[2].status, "skipped_no_m_subsets");
    }

    #[test]
    fn n_override_modes() {
        let g = make_symmetric(3, 100).unwrap();
        let abelian = class_spec(ClassId::Abelian);
        let mut opts = VerifyOptions {
            m_min: 1,
            m_max: 1,
            ..Default::default()
        };
        opts.n_override = Some(4);
        let report = verify_group(&g, &abelian, &opts);
        assert_eq!(report.checks[0].status, "condition_fails_at_n");
        let w = report.checks[0].violation.as_ref().unwrap();
        assert_eq!(w.bad_common.len(), 4);

        opts.n_override = Some(5);
        let report = verify_group(&g, &abelian, &opts);
        let check = report.checks[0].check.as_ref().unwrap();
        assert_eq!(check.n_star, 5);
        assert!(check.holds); // 6 <= (16/3) * 4
        assert_eq!(check.bound, "64/3");
    }

    #[test]
    fn cap_exceeded_is_partial() {
        let g = make_symmetric(3, 100).unwrap();
        let opts = VerifyOptions {
            m_min: 1,
            m_max: 5,
            m_cap: 2,
            n_override: None,
        };
        let report = verify_group(&g, &class_spec(ClassId::Abelian), &opts);
        let statuses: Vec<&str> = report.checks.iter().map(|c| c.status).collect();
        assert_eq!(
            statuses,
            vec![
                "checked",
                "checked",
                "skipped_cap_exceeded",
                "skipped_cap_exceeded",
                "skipped_cap_exceeded"
            ]
        );
    }

    #[test]
    fn scan_is_deterministic_across_parallelism() {
        let base = ScanOptions {
            max_order: 24,
            classes: ClassId::ALL.to_vec(),
            verify: Default::default(),
            order_cap: 1000,
            seed: Some(7),
            parallel: false,
        };
        let sequential = run_scan(&base);
        let parallel = run_scan(&ScanOptions {
            parallel: true,
            ..base
        });
        let a = serde_json::to_string(&sequential).unwrap();
        let b = serde_json::to_string(&parallel).unwrap();
        assert_eq!(a, b);
        assert!(!sequential.has_violations());
        assert!(sequential.summary.bound_checks > 0);
    }

    #[test]
    fn scan_rows_are_sorted() {
        let report = run_scan(&ScanOptions {
            max_order: 8,
            classes: ClassId::ALL.to_vec(),
            verify: Default::default(),
            order_cap: 1000,
            seed: None,
            parallel: false,
        });
        let keys: Vec<(String, String)> = report
            .rows
            .iter()
            .map(|r| (r.group.clone(), r.class.clone()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}

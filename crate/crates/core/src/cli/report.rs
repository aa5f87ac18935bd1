//! Report documents produced by the subcommands.
//!
//! Everything here is a pure function of an [`Experiment`]; there are no
//! timestamps or host details, so equal inputs give byte-identical JSON.

use serde::{Deserialize, Serialize};

use super::config::Experiment;
use crate::density::{
    deep_hole_probe, density_stats, orbit_fit, residual_curve, DensityStats, ProbeRow, ResidualCurve, EVIDENCE_CAVEAT,
    REGULARIZATION,
};
use crate::exact::{classify_parts, Classification, Configuration, ExactScalar};
use crate::independence::{certify_independence, three_point_certificate, GramReport};
use crate::phase_space::{nu_point, LatticeBasis, PhasePoint};
use crate::signal::{make_gaussian, tf_shift, GridSpec};

/// Lean identifiers used as tags.
pub mod tags {
    pub const DENSE_LARGE_COVOLUME: &str = "hrt_dense_large_covolume";
    pub const DENSE_LARGE_COVOLUME_LINDEP: &str = "hrt_dense_large_covolume_lindep";
    pub const FINITE_RELATIVE_ORBIT: &str = "hrt_finite_relative_orbit";
    pub const SEMIGROUP_FROM_LATTICE_AND_NU: &str = "semigroup_preserves_from_lattice_and_nu";
    pub const DENSE_SEMIGROUP_ALL_PHASE_SPACE: &str = "dense_semigroup_preserves_all_phase_space";
    pub const LARGE_COVOLUME_CONTRADICTION: &str = "large_covolume_contradiction";
}

/// Slugs naming the analytic inputs a section gives evidence for.
pub mod inputs {
    pub const THREE_POINT: &str = "three-point-theorem";
    pub const LATTICE_INCOMPLETENESS: &str = "lattice-gabor-incompleteness";
    pub const SEMIGROUP_DENSITY: &str = "forward-semigroup-density";
    pub const LINNELL: &str = "linnell-lattice-theorem";
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigurationSummary {
    pub a: PhasePoint,
    pub b: PhasePoint,
    pub covolume: f64,
    pub r: ExactScalar,
    pub s: ExactScalar,
    pub nu: PhasePoint,
}

impl ConfigurationSummary {
    fn new(basis: &LatticeBasis, r: ExactScalar, s: ExactScalar) -> Self {
        Self {
            a: basis.a(),
            b: basis.b(),
            covolume: basis.covolume(),
            r,
            s,
            nu: basis.combine(r.eval(), s.eval()),
        }
    }
}

/// Output of `classify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub configuration: ConfigurationSummary,
    pub classification: Classification,
    pub theorem: String,
    pub refinement_n: Option<u64>,
    pub justification: String,
}

impl ClassifyReport {
    pub fn exit_code(&self) -> i32 {
        if self.classification.is_classified() {
            0
        } else {
            2
        }
    }

    pub fn to_text(&self) -> String {
        let c = &self.configuration;
        let mut out = format!(
            "configuration: a=({}, {}) b=({}, {}) covol={} r={} s={}\n",
            c.a.x, c.a.omega, c.b.x, c.b.omega, c.covolume, c.r, c.s
        );
        let kind = match self.classification {
            Classification::DenseLargeCovolume => "DenseLargeCovolume".to_string(),
            Classification::RationalCoordinate { n } => format!("RationalCoordinate N={n}"),
            Classification::OutOfScope { reason } => format!("OutOfScope({reason:?})"),
        };
        out.push_str(&format!("classification: {kind}\ntheorem: {}\n", self.theorem));
        out.push_str(&format!("justification: {}\n", self.justification));
        out
    }
}

pub fn classify_report(basis: &LatticeBasis, r: ExactScalar, s: ExactScalar) -> ClassifyReport {
    let classification = classify_parts(basis, &r, &s);
    ClassifyReport {
        configuration: ConfigurationSummary::new(basis, r, s),
        classification,
        theorem: classification.theorem_name().to_string(),
        refinement_n: match classification {
            Classification::RationalCoordinate { n } => Some(n),
            _ => None,
        },
        justification: classification.justification().to_string(),
    }
}

pub fn gram_text(report: &GramReport) -> String {
    let condition = report.condition.map_or("inf".to_string(), |c| format!("{c:.6}"));
    format!(
        "family: {}\nmin_singular: {:e}\ncondition: {condition}\nthreshold: {:e}\ngrid: N={} T={}\ncertified_independent: {}\n",
        report.labels.join(", "),
        report.min_singular,
        report.threshold,
        report.grid.n_samples(),
        report.grid.period(),
        report.certified_independent
    )
}

pub fn density_csv(stats: &DensityStats) -> String {
    let mut out = String::from("target_x,target_omega,n,m1,m2,error\n");
    for w in stats.witnesses.iter().flatten() {
        out.push_str(&format!("{},{},{},{},{},{:e}\n", w.target.x, w.target.omega, w.n, w.m1, w.m2, w.error));
    }
    out
}

pub fn density_text(stats: &DensityStats) -> String {
    format!(
        "eps: {}\nn_max: {}\nseed: {}\nsuccesses: {}/{}\nrate: {}\n",
        stats.eps, stats.n_max, stats.seed, stats.successes, stats.num_targets, stats.rate
    )
}

/// Output of `probe`: one residual curve per lattice spacing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeDocument {
    pub grid: GridSpec,
    pub coeff_radius: u32,
    pub regularization: f64,
    /// Residuals at the full radius.
    pub rows: Vec<ProbeRow>,
    pub curves: Vec<ResidualCurve>,
    pub caveat: String,
}

impl ProbeDocument {
    /// Every curve entry as a row, for plotting.
    pub fn to_csv(&self) -> String {
        let rows: Vec<ProbeRow> = self
            .rows
            .iter()
            .zip(&self.curves)
            .flat_map(|(row, curve)| {
                curve.entries.iter().map(move |e| ProbeRow {
                    alpha: row.alpha,
                    covol: row.covol,
                    coeff_radius: e.coeff_radius,
                    residual: e.residual,
                })
            })
            .collect();
        crate::density::probe_rows_csv(&rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            out.push_str(&format!(
                "alpha={} covol={} R={} residual={:e}\n",
                row.alpha, row.covol, row.coeff_radius, row.residual
            ));
        }
        out.push_str(&format!("note: {}\n", self.caveat));
        out
    }
}

/// Deep-hole residual curves for `radii = 1..=coeff_radius` on `αZ × αZ`.
pub fn probe_document(alphas: &[f64], coeff_radius: u32, grid: GridSpec) -> crate::Result<ProbeDocument> {
    let g = make_gaussian(grid);
    let radii: Vec<u32> = (1..=coeff_radius.max(1)).collect();
    let mut rows = Vec::with_capacity(alphas.len());
    let mut curves = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        let basis = LatticeBasis::square(alpha)?;
        let probe = deep_hole_probe(&g, alpha)?;
        let curve = residual_curve(&g, &basis, &probe, &format!("gaussian at ({}, {})", alpha / 2.0, alpha / 2.0), &radii)?;
        let last = curve.entries.last().expect("at least one radius");
        rows.push(ProbeRow {
            alpha,
            covol: basis.covolume(),
            coeff_radius: last.coeff_radius,
            residual: last.residual,
        });
        curves.push(curve);
    }
    Ok(ProbeDocument {
        grid,
        coeff_radius: coeff_radius.max(1),
        regularization: REGULARIZATION,
        rows,
        curves,
        caveat: EVIDENCE_CAVEAT.to_string(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SectionStatus {
    Ok,
    Error,
}

/// One part of the consolidated report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Section<T> {
    pub status: SectionStatus,
    pub tags: Vec<String>,
    pub inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl<T> Section<T> {
    fn from_result<E: ToString>(result: Result<T, E>, tags: &[&str], inputs: &[&str]) -> Self {
        let (status, result, error) = match result {
            Ok(v) => (SectionStatus::Ok, Some(v), None),
            Err(e) => (SectionStatus::Error, None, Some(e.to_string())),
        };
        Self {
            status,
            tags: tags.iter().map(|s| s.to_string()).collect(),
            inputs: inputs.iter().map(|s| s.to_string()).collect(),
            result,
            error,
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == SectionStatus::Ok
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipResult {
    pub coeff_radius: u32,
    /// `‖π(ν)f − P π(ν)f‖ / ‖π(ν)f‖` against the truncated orbit of `L0`.
    pub residual: f64,
    pub family_size: usize,
    pub regularization: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportInputs {
    pub a: PhasePoint,
    pub b: PhasePoint,
    pub r: ExactScalar,
    pub s: ExactScalar,
    pub grid: GridSpec,
    pub threshold: f64,
    pub eps: f64,
    pub n_max: u64,
    pub num_targets: usize,
    pub seed: u64,
    pub alphas: Vec<f64>,
    pub radius: u32,
    pub membership_radius: u32,
}

/// The consolidated document emitted by `report`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub inputs: ReportInputs,
    pub classification: Section<ClassifyReport>,
    pub certificate: Section<GramReport>,
    pub three_point_certificate: Section<GramReport>,
    pub membership: Section<MembershipResult>,
    pub density: Section<DensityStats>,
    pub probe: Section<ProbeDocument>,
    pub caveat: String,
}

impl ReportDocument {
    /// 2 if the configuration is out of scope, 1 if a section failed, 2 if
    /// the four-point family is not certified, else 0.
    pub fn exit_code(&self) -> i32 {
        let classified = self
            .classification
            .result
            .as_ref()
            .is_some_and(|c| c.classification.is_classified());
        if !classified {
            return 2;
        }
        let sections_ok = self.certificate.is_ok()
            && self.three_point_certificate.is_ok()
            && self.membership.is_ok()
            && self.density.is_ok()
            && self.probe.is_ok();
        if !sections_ok {
            return 1;
        }
        let certified = self.certificate.result.as_ref().is_some_and(|g| g.certified_independent);
        if certified {
            0
        } else {
            2
        }
    }
}

fn on_config<T>(
    config: &crate::Result<Configuration>,
    f: impl FnOnce(&Configuration) -> crate::Result<T>,
) -> Result<T, String> {
    match config {
        Ok(c) => f(c).map_err(|e| e.to_string()),
        Err(e) => Err(e.to_string()),
    }
}

fn theorem_tags(c: &Classification) -> Vec<&'static str> {
    match c {
        Classification::DenseLargeCovolume => vec![tags::DENSE_LARGE_COVOLUME, tags::DENSE_LARGE_COVOLUME_LINDEP],
        Classification::RationalCoordinate { .. } => vec![tags::FINITE_RELATIVE_ORBIT],
        Classification::OutOfScope { .. } => vec![],
    }
}

/// Runs every evidence suite for one experiment. Failures are recorded in
/// the affected section and do not stop the others.
pub fn build_report(exp: &Experiment) -> Result<ReportDocument, super::config::LocatedError> {
    let (r, s) = exp.scalars()?;
    let classification = classify_report(&exp.basis, r, s);
    let class = classification.classification;
    let theorems = theorem_tags(&class);
    let class_inputs: &[&str] = match class {
        Classification::DenseLargeCovolume => &[inputs::LATTICE_INCOMPLETENESS, inputs::SEMIGROUP_DENSITY],
        Classification::RationalCoordinate { .. } => &[inputs::LINNELL],
        Classification::OutOfScope { .. } => &[],
    };

    let config: crate::Result<Configuration> = Configuration::new(exp.basis, r, s);
    let g = make_gaussian(exp.grid);

    let certificate = Section::from_result(
        on_config(&config, |c| certify_independence(&g, c, exp.threshold)),
        &theorems,
        &[],
    );
    let three_point = Section::from_result(
        three_point_certificate(&g, &exp.basis, exp.threshold),
        &[],
        &[inputs::THREE_POINT],
    );
    let membership = Section::from_result(
        on_config(&config, |c| {
            let probe = tf_shift(&g, nu_point(c));
            orbit_fit(&g, c.basis(), &probe, exp.membership_radius).map(|fit| MembershipResult {
                coeff_radius: exp.membership_radius,
                residual: fit.residual,
                family_size: fit.family_size,
                regularization: fit.regularization,
            })
        }),
        &[tags::LARGE_COVOLUME_CONTRADICTION],
        &[inputs::LATTICE_INCOMPLETENESS],
    );
    let density = Section::from_result(
        on_config(&config, |c| Ok(density_stats(c, exp.eps, exp.n_max, exp.num_targets, exp.seed))),
        &[tags::SEMIGROUP_FROM_LATTICE_AND_NU, tags::DENSE_SEMIGROUP_ALL_PHASE_SPACE],
        &[inputs::SEMIGROUP_DENSITY],
    );
    let probe = Section::from_result(
        probe_document(&exp.alphas, exp.radius, exp.grid),
        &[],
        &[inputs::LATTICE_INCOMPLETENESS],
    );

    Ok(ReportDocument {
        tool: "hrtlab".to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        inputs: ReportInputs {
            a: exp.basis.a(),
            b: exp.basis.b(),
            r,
            s,
            grid: exp.grid,
            threshold: exp.threshold,
            eps: exp.eps,
            n_max: exp.n_max,
            num_targets: exp.num_targets,
            seed: exp.seed,
            alphas: exp.alphas.clone(),
            radius: exp.radius,
            membership_radius: exp.membership_radius,
        },
        classification: Section::from_result(Ok::<_, String>(classification), &theorems, class_inputs),
        certificate,
        three_point_certificate: three_point,
        membership,
        density,
        probe,
        caveat: EVIDENCE_CAVEAT.to_string(),
    })
}

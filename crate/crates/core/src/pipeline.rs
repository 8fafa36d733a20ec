//! Pipeline orchestration: classify, normalize, test positivity, construct
//! the hypersurface, certify.

use num_complex::Complex64;

use crate::hypersurface::{self, ContactVerdict};
use crate::normalize;
use crate::operators::{self, CharVerdict, SimpleVerdict};
use crate::posform::{self, PosHolds};
use crate::problem::{pair_of, ValidatedProblem, DEFAULT_SAMPLES};
use crate::report::{
    CharacteristicReport, CertificateReport, Classification, MapReport, PosReport, QFormReport,
    Report, ResidualReport, SurfaceReport, TsunoReport, REPORT_SCHEMA,
};
use crate::{Error, Result, Tolerances};

/// Extra controls beyond the problem file.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Also express the constructed surface in the original coordinates.
    pub original_coords: bool,
    /// Contact sample count per radius (defaults to 10^4).
    pub samples: Option<usize>,
}

/// Execute the full pipeline on a validated problem. Unsupported regimes
/// (multiple characteristics, failed pseudoconvexity) still produce a report
/// carrying the corresponding classification; only malformed inputs error.
pub fn run_check(problem: &ValidatedProblem, options: &RunOptions) -> Result<Report> {
    let tol = Tolerances::with_eps(problem.tolerance);
    let samples = options.samples.unwrap_or(DEFAULT_SAMPLES);
    let mut notes: Vec<String> = Vec::new();

    let (char_verdict, sv) =
        operators::characteristic_test(&problem.operator, &problem.rho, &problem.point, tol.eps)?;
    let char_report = CharacteristicReport {
        verdict: match char_verdict {
            CharVerdict::NonCharacteristic => "non-characteristic".into(),
            CharVerdict::Characteristic => "characteristic".into(),
            CharVerdict::Indeterminate => "indeterminate".into(),
        },
        symbol_value: pair_of(sv.value),
        zeta_gradient: sv.zeta_gradient.iter().map(|&c| pair_of(c)).collect(),
        conormal: sv.covector.iter().map(|&c| pair_of(c)).collect(),
    };
    let mut report = Report {
        schema: REPORT_SCHEMA.to_string(),
        classification: Classification::NonCharacteristic,
        dimension: problem.dimension,
        order: problem.order,
        tolerance: problem.tolerance,
        seed: problem.seed,
        characteristic: char_report,
        pos_full: None,
        pos_reduced: None,
        q_form: None,
        a_grad0: None,
        surface: None,
        certificate: None,
        tsuno: None,
        coordinate_map: None,
        residuals: ResidualReport::default(),
        residual_failure: false,
        notes: Vec::new(),
    };

    match char_verdict {
        CharVerdict::NonCharacteristic => {
            report.notes = notes;
            return Ok(report);
        }
        CharVerdict::Indeterminate => {
            report.classification = Classification::Marginal;
            notes.push(format!(
                "characteristic value {:.3e} sits inside the tolerance band; no verdict",
                sv.value.norm()
            ));
            report.notes = notes;
            return Ok(report);
        }
        CharVerdict::Characteristic => {}
    }

    let (simple, _) = operators::simply_characteristic_test(
        &problem.operator,
        &problem.rho,
        &problem.point,
        tol.eps,
    )?;
    if simple == SimpleVerdict::NotSimple {
        report.classification = Classification::NotSimplyCharacteristic;
        notes.push("the covector gradient of the symbol vanishes at the point".into());
        report.notes = notes;
        return Ok(report);
    }

    // Hermitian form in the original coordinates.
    let q = posform::build_q(&problem.operator, &problem.rho, &problem.point, tol.eps)?;
    let pos_full = posform::pos_check(&q, tol.eps_pos)?;
    report.q_form = Some(QFormReport::from_qform(&q));
    report.pos_full = Some(PosReport::from_verdict(&pos_full));

    // Normal form.
    let work_order = problem.order + problem.operator.order() + 2;
    let (map, rho_w) = match normalize::normalize_domain(
        &problem.rho,
        &problem.point,
        work_order,
        tol.eps,
    ) {
        Ok(v) => v,
        Err(Error::NotStrictlyPseudoconvex { index, value }) => {
            report.classification = Classification::NotStrictlyPseudoconvex;
            notes.push(format!(
                "Levi form pivot {index} is {value:.3e}; strict pseudoconvexity fails"
            ));
            report.notes = notes;
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let np = match normalize::normalize_operator(
        &problem.operator,
        &map,
        &rho_w,
        problem.order,
        tol.eps,
    ) {
        Ok(v) => v,
        Err(Error::NotSimplyCharacteristic(norm)) => {
            report.classification = Classification::NotSimplyCharacteristic;
            notes.push(format!(
                "tangential symbol coefficients vanish at the point (|b(0)| = {norm:.3e})"
            ));
            report.notes = notes;
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    np.validate(1e-7)?;
    report.residuals.map_round_trip = Some(np.map.round_trip_defect());
    report.a_grad0 = Some(np.a_grad0.iter().map(|&c| pair_of(c)).collect());
    report.coordinate_map = Some(MapReport::from_map(&np.map, problem.order));

    let pos_reduced = posform::reduced_criterion(&np, tol.eps_pos);
    report.pos_reduced = Some(PosReport::from_verdict(&pos_reduced));
    if pos_full.holds != pos_reduced.holds {
        notes.push(format!(
            "full and reduced positivity verdicts disagree ({} vs {}); margin is near the band",
            pos_full.holds.as_str(),
            pos_reduced.holds.as_str()
        ));
    }

    match pos_reduced.holds {
        PosHolds::Marginal => {
            report.classification = Classification::Marginal;
            notes.push(format!(
                "positivity margin {:.3e} is inside the tolerance band; no construction attempted",
                pos_reduced.margin
            ));
            report.notes = notes;
            return Ok(report);
        }
        PosHolds::No => {
            report.classification = Classification::PosFails;
            notes.push("positivity fails; the certificate route is inconclusive".into());
            report.notes = notes;
            return Ok(report);
        }
        PosHolds::Yes => {}
    }

    if problem.options.skip_construction {
        report.classification = Classification::PosFails;
        notes.push("construction skipped on request; positivity holds".into());
        report.notes = notes;
        return Ok(report);
    }

    // Rotate phases, choose data, solve, certify.
    let (np_rot, phases) = hypersurface::rotate_to_nonnegative(&np, problem.order, tol.eps)?;
    let n = np_rot.n();
    let a_rot: Vec<f64> = np_rot.a_grad0[..n].iter().map(|c| c.re).collect();
    let (_, g) = hypersurface::choose_initial_data(&np.a_grad0[..n], problem.order);
    let surface = hypersurface::construct_surface(&np_rot, &g, problem.order)?;
    report.residuals.echar = Some(surface.echar_residual);

    let certificate = hypersurface::contact_certificate(
        &np_rot.rho,
        &surface,
        &a_rot,
        phases,
        problem.seed,
        samples,
    )?;

    let f_def = hypersurface::graph_defining_function(&surface.f, np_rot.dim());
    let tsuno = hypersurface::tsuno_renormalize(
        &np_rot,
        &f_def,
        problem.order,
        problem.options.root_choice,
        tol.eps,
    )?;
    report.residuals.tsuno = Some(tsuno.residual);

    let mut surface_report = SurfaceReport::from_surface(&surface);
    if options.original_coords {
        let original = hypersurface::surface_in_original_coords(&surface, &np_rot)?;
        surface_report.defining_function_original_coords =
            Some(crate::problem::series_to_records(&original.truncate(problem.order)));
    }
    report.surface = Some(surface_report);
    report.certificate = Some(CertificateReport::from_certificate(&certificate));
    report.tsuno = Some(TsunoReport::from_tsuno(&tsuno));
    // Re-emit the map from the rotated problem so downstream consumers can
    // transport the surface.
    report.coordinate_map = Some(MapReport::from_map(&np_rot.map, problem.order));
    report.a_grad0 = Some(np_rot.a_grad0.iter().map(|&c| pair_of(c)).collect());

    let residuals_ok = surface.echar_residual < tol.eps && tsuno.residual < tol.eps;
    match certificate.verdict {
        ContactVerdict::StronglyPConvex if residuals_ok => {
            report.classification = Classification::PosHolds;
        }
        ContactVerdict::Inconclusive => {
            report.classification = Classification::Marginal;
            notes.push("contact form is positive but nearly degenerate; inconclusive".into());
        }
        _ => {
            report.classification = Classification::PosFails;
            report.residual_failure = true;
            notes.push(format!(
                "certificate checks failed: echar residual {:.3e}, tsuno residual {:.3e}, \
                 sample min {:.3e}",
                surface.echar_residual, tsuno.residual, certificate.sample_min
            ));
        }
    }
    report.notes = notes;
    Ok(report)
}

/// One-paragraph human summary for standard output.
pub fn human_summary(report: &Report) -> String {
    let mut out = String::new();
    let push = |out: &mut String, line: String| {
        out.push_str(&line);
        out.push('\n');
    };
    let meaning = match report.classification {
        Classification::NonCharacteristic => "every local solution extends across the point",
        Classification::NotSimplyCharacteristic => "unsupported: multiple characteristics",
        Classification::NotStrictlyPseudoconvex => "unsupported: strict pseudoconvexity fails",
        Classification::PosHolds => "strongly P-convex; a non-extendable solution exists",
        Classification::PosFails => "inconclusive",
        Classification::Marginal => "inconclusive: verdict inside the tolerance band",
    };
    push(
        &mut out,
        format!(
            "classification: {} ({meaning})  [dimension {}, order {}]",
            report.classification.as_str(),
            report.dimension,
            report.order
        ),
    );
    push(
        &mut out,
        format!(
            "characteristic test: {} (|P_m(p, d rho)| = {:.3e})",
            report.characteristic.verdict,
            Complex64::new(
                report.characteristic.symbol_value[0],
                report.characteristic.symbol_value[1]
            )
            .norm()
        ),
    );
    if let Some(pos) = &report.pos_reduced {
        let sum = pos
            .sum_sq
            .map(|s| format!(", sum_sq = {s:.6}"))
            .unwrap_or_default();
        push(
            &mut out,
            format!(
                "positivity: {} (margin {:.3e}{sum}; spectrum {:?})",
                pos.holds, pos.margin, pos.restricted_spectrum
            ),
        );
    }
    if let Some(s) = &report.surface {
        push(
            &mut out,
            format!(
                "surface: echar residual {:.3e} through order {}",
                s.echar_residual, s.achieved_order
            ),
        );
    }
    if let Some(c) = &report.certificate {
        push(
            &mut out,
            format!(
                "certificate: {} (gamma {:.6}, H spectrum {:?}, sample min {:.3e})",
                c.verdict, c.gamma, c.h_spectrum, c.sample_min
            ),
        );
    }
    if let Some(t) = &report.tsuno {
        push(
            &mut out,
            format!(
                "renormalization: residual {:.3e} through order {}",
                t.residual, t.achieved_order
            ),
        );
    }
    for note in &report.notes {
        push(&mut out, format!("note: {note}"));
    }
    out
}

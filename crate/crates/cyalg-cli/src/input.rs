use std::path::Path;

use cyalg::abc::multiply_grading;
use cyalg::dimer::{
    dual_qp, grading_from_matchings, jacobian_presentation, perfect_matchings, DegreeFunction,
    DimerModel, QuiverWithPotential, DEFAULT_MATCHING_CAP,
};
use cyalg::quiver_algebra::GradedQuiverPresentation;

use crate::error::CliError;
use crate::PresOpts;

pub fn name(path: &Path) -> String {
    path.display().to_string()
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        file: name(path),
        source,
    })
}

pub fn is_dimer(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "dimer")
}

pub fn quiver_file(path: &Path) -> Result<GradedQuiverPresentation, CliError> {
    let text = read(path)?;
    GradedQuiverPresentation::parse(&text).map_err(|e| CliError::quiver(&name(path), e))
}

pub fn dimer_file(path: &Path) -> Result<DimerModel, CliError> {
    let text = read(path)?;
    DimerModel::parse(&text).map_err(|e| CliError::dimer(&name(path), e))
}

/// A dimer with its dual QP and the grading selected by `--matching`.
pub struct GradedDimer {
    pub model: DimerModel,
    pub qp: QuiverWithPotential,
    pub grading: DegreeFunction,
}

pub fn graded_dimer(opts: &PresOpts) -> Result<GradedDimer, CliError> {
    let file = name(&opts.file);
    let model = dimer_file(&opts.file)?;
    model.validate().map_err(|e| CliError::dimer(&file, e))?;
    let qp = dual_qp(&model).map_err(|e| CliError::dimer(&file, e))?;
    let chosen: Vec<Vec<usize>> = if opts.matchings.is_empty() {
        perfect_matchings(&model, DEFAULT_MATCHING_CAP).matchings
    } else {
        opts.matchings
            .iter()
            .map(|m| {
                m.split(',')
                    .map(|e| {
                        model
                            .edge_by_name(e.trim())
                            .ok_or_else(|| CliError::Input(format!("{file}: unknown edge `{e}`")))
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?
    };
    let grading = grading_from_matchings(&model, &chosen, &vec![-1; chosen.len()])
        .map_err(|e| CliError::dimer(&file, e))?;
    Ok(GradedDimer { model, qp, grading })
}

/// The presentation named by `opts`, with the grading multiplier applied.
pub fn presentation(opts: &PresOpts) -> Result<GradedQuiverPresentation, CliError> {
    let file = name(&opts.file);
    let pres = if is_dimer(&opts.file) {
        let g = graded_dimer(opts)?;
        jacobian_presentation(&g.qp, &g.grading).map_err(|e| CliError::dimer(&file, e))?
    } else {
        quiver_file(&opts.file)?
    };
    match opts.n {
        None | Some(1) => Ok(pres),
        Some(0) => Err(CliError::Input("--n must be positive".into())),
        Some(k) => multiply_grading(&pres, k).map_err(|e| CliError::abc(&file, e)),
    }
}

use serde::Serialize;
use setdyn::interval::{cover_trace, RationalInterval};

use crate::input::{Input, System};
use crate::CliError;

#[derive(Serialize)]
pub struct CoverReport {
    pub input_digest: String,
    #[serde(rename = "J")]
    pub j: RationalInterval,
    pub target: RationalInterval,
    pub horizon: usize,
    #[serde(rename = "M")]
    pub m: Option<usize>,
    pub persistent: bool,
    /// `F^1(J), .., F^horizon(J)`.
    pub trace: Vec<RationalInterval>,
}

pub fn run(input: &Input, j: &str, target: &str, horizon: usize) -> Result<CoverReport, CliError> {
    let System::Pwl(map) = &input.system else {
        return Err(CliError::Input("cover needs a pwl input document".into()));
    };
    let j = RationalInterval::parse(j)?;
    let target = RationalInterval::parse(target)?;
    let result = cover_trace(map, &j, &target, horizon)?;
    Ok(CoverReport {
        input_digest: input.digest.clone(),
        j,
        target,
        horizon,
        m: result.covering.as_ref().map(|c| c.first),
        persistent: result.covering.is_some_and(|c| c.persistent),
        trace: result.trace,
    })
}

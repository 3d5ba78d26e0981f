use std::fs;

use lrb::homological::Analysis;
use lrb::io::to_pretty_json;
use lrb::LrbError;

use crate::{load_monoid, report_error, write_text, AnalyzeArgs, CliResult, Failure};

type Artifact = (
    &'static str,
    fn(&Analysis, &AnalyzeArgs) -> Result<String, LrbError>,
);

fn ext(a: &Analysis, args: &AnalyzeArgs) -> Result<String, LrbError> {
    Ok(a.ext_table(args.field, args.max_degree)?.to_csv())
}

fn quiver(a: &Analysis, _: &AnalyzeArgs) -> Result<String, LrbError> {
    Ok(a.quiver().to_dot())
}

fn gldim(a: &Analysis, args: &AnalyzeArgs) -> Result<String, LrbError> {
    Ok(format!("{}\n", a.global_dimension(args.field)?))
}

fn leray(a: &Analysis, args: &AnalyzeArgs) -> Result<String, LrbError> {
    Ok(format!("{}\n", a.leray_number(args.field)?))
}

fn bounds(a: &Analysis, args: &AnalyzeArgs) -> Result<String, LrbError> {
    Ok(to_pretty_json(&a.bounds_report(args.field)?))
}

/// Produces each requested artifact; all of them when no flag is given.
/// A failing artifact is reported and the rest still run.
pub fn run(args: &AnalyzeArgs) -> CliResult<()> {
    let b = load_monoid(&args.monoid)?;
    let analysis = Analysis::new(&b);
    let all: [(bool, Artifact); 5] = [
        (args.ext, ("ext.csv", ext)),
        (args.quiver, ("quiver.dot", quiver)),
        (args.gldim, ("gldim.txt", gldim)),
        (args.leray, ("leray.txt", leray)),
        (args.bounds, ("bounds.json", bounds)),
    ];
    let none = all.iter().all(|(on, _)| !on);
    let selected: Vec<Artifact> = all
        .into_iter()
        .filter(|(on, _)| none || *on)
        .map(|(_, a)| a)
        .collect();
    if let Some(dir) = &args.out_dir {
        fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    }

    let mut first_error = None;
    for (file, produce) in &selected {
        match produce(&analysis, args) {
            Ok(text) => match &args.out_dir {
                Some(dir) => write_text(&dir.join(file), &text)?,
                None if selected.len() == 1 => print!("{text}"),
                None => print!("# {file}\n{text}"),
            },
            Err(e) => {
                report_error(e.kind(), &format!("{file}: {e}"));
                first_error.get_or_insert(e);
            }
        }
    }
    match first_error {
        // Already reported above.
        Some(e) => Err(Failure::Reported(e)),
        None => Ok(()),
    }
}

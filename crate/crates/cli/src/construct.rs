use std::path::Path;

use lrb::constructions::{
    complex_sign_monoid, direct_product, face_monoid_from_covectors, free_lrb,
    free_partially_commutative, karnofsky_rhodes, quiver_lrb, real_face_monoid_from_normals,
    rhodes_expansion, ArrangementJson, FiniteLattice, LatticeJson, Quiver, QuiverJson, SignVector,
};
use lrb::graph::GraphJson;
use lrb::io::write_monoid;
use lrb::{Graph, Lrb, LrbError};

use crate::{load_monoid, read_json, write_text, CliResult, ConstructArgs, Kind};

fn required<'a, T>(value: &'a Option<T>, flag: &str, kind: Kind) -> CliResult<&'a T> {
    value.as_ref().ok_or_else(|| {
        LrbError::InvalidInput(format!("{kind:?} needs --{flag}").to_lowercase()).into()
    })
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(String::from)
        .collect()
}

fn lattice_from(path: &Path) -> CliResult<FiniteLattice> {
    Ok(FiniteLattice::from_json(&read_json::<LatticeJson>(path)?)?)
}

/// Resolves `letter=element` pairs, the element given by name or index.
fn generator_map(spec: &str, lattice: &FiniteLattice) -> CliResult<Vec<(String, usize)>> {
    split_list(spec)
        .into_iter()
        .map(|pair| {
            let (letter, value) = pair.split_once('=').ok_or_else(|| {
                LrbError::InvalidInput(format!("generator {pair:?} is not letter=element"))
            })?;
            let index = lattice
                .element(value)
                .or_else(|| value.parse::<usize>().ok().filter(|&i| i < lattice.len()))
                .ok_or_else(|| {
                    LrbError::InvalidInput(format!("unknown lattice element {value:?}"))
                })?;
            Ok((letter.to_string(), index))
        })
        .collect()
}

fn build(args: &ConstructArgs) -> CliResult<Lrb> {
    let kind = args.kind;
    let cap = args.cap;
    let b = match kind {
        Kind::Free => free_lrb(&split_list(required(&args.letters, "letters", kind)?), cap)?,
        Kind::Fpc => {
            let graph = Graph::from_json(&read_json::<GraphJson>(required(
                &args.graph,
                "graph",
                kind,
            )?)?)?;
            free_partially_commutative(&graph, cap)?
        }
        Kind::Covectors => {
            let list: Vec<String> = read_json(required(&args.covectors, "covectors", kind)?)?;
            let vectors = list
                .iter()
                .map(|s| s.parse())
                .collect::<Result<Vec<SignVector>, _>>()?;
            if vectors.len() > cap {
                return Err(LrbError::TooLarge {
                    what: "covector list".into(),
                    size: vectors.len(),
                    cap,
                }
                .into());
            }
            face_monoid_from_covectors(&vectors)?
        }
        Kind::Arrangement => {
            let arrangement: ArrangementJson =
                read_json(required(&args.normals, "normals", kind)?)?;
            real_face_monoid_from_normals(&arrangement.normals()?, args.hyperplane_cap)?
        }
        Kind::ComplexSign => complex_sign_monoid(*required(&args.n, "n", kind)?, cap)?,
        Kind::Kr => {
            let lattice = lattice_from(required(&args.lattice, "lattice", kind)?)?;
            let gens = generator_map(required(&args.gens, "gens", kind)?, &lattice)?;
            karnofsky_rhodes(&lattice, &gens, cap)?.lrb
        }
        Kind::Rhodes => {
            rhodes_expansion(
                &lattice_from(required(&args.lattice, "lattice", kind)?)?,
                cap,
            )?
            .lrb
        }
        Kind::Quiver => {
            let quiver = Quiver::from_json(&read_json::<QuiverJson>(required(
                &args.quiver,
                "quiver",
                kind,
            )?)?)?;
            quiver_lrb(&quiver, cap)?.lrb
        }
        Kind::Product => {
            let left = load_monoid(required(&args.left, "left", kind)?)?;
            let right = load_monoid(required(&args.right, "right", kind)?)?;
            direct_product(&left, &right, cap)?
        }
        Kind::Submonoid => {
            let b = load_monoid(required(&args.monoid, "monoid", kind)?)?;
            let gens = split_list(required(&args.gens, "gens", kind)?)
                .iter()
                .map(|g| {
                    b.element(g)
                        .ok_or_else(|| LrbError::InvalidInput(format!("unknown element {g:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            b.submonoid_generated(&gens)?.sub
        }
    };
    Ok(b)
}

pub fn run(args: &ConstructArgs) -> CliResult<()> {
    let b = build(args)?;
    let text = write_monoid(&b);
    let summary = format!(
        "size {}, support lattice {} elements",
        b.size(),
        b.support_lattice().len()
    );
    match &args.out {
        Some(path) => {
            write_text(path, &text)?;
            println!("{summary}");
        }
        None => {
            print!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

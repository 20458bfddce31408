use std::path::Path;

use serde::Serialize;

use coreseq::engine::SequentFamily;
use coreseq::intuitionistic::verdicts;
use coreseq::kernel::Mode;

use crate::{engine, write_file, DISAGREEMENT, ERROR, PROVABLE, VERSION};

#[derive(Serialize)]
struct Row {
    sequent: String,
    weight: usize,
    core: &'static str,
    core_min_height: Option<usize>,
    int: &'static str,
    divergent: bool,
}

#[derive(Serialize)]
struct Summary {
    version: &'static str,
    family: String,
    mode: Mode,
    rows: usize,
    core_provable: usize,
    int_provable: usize,
    divergent: usize,
    violations: usize,
}

fn verdict(b: bool) -> &'static str {
    if b {
        "provable"
    } else {
        "unprovable"
    }
}

pub fn run(atoms: usize, weight_cap: usize, mode: Mode, out: Option<&Path>) -> anyhow::Result<u8> {
    let family = SequentFamily::new(atoms, weight_cap);
    let sequents = family.sequents();
    let vs = match verdicts(&sequents, &engine(mode)?) {
        Ok(vs) => vs,
        Err(e) => {
            eprintln!("error: {e}; no output written");
            return Ok(ERROR);
        }
    };

    let mut csv = csv::Writer::from_writer(Vec::new());
    let mut summary = Summary {
        version: VERSION,
        family: family.describe(),
        mode,
        rows: sequents.len(),
        core_provable: 0,
        int_provable: 0,
        divergent: 0,
        violations: 0,
    };
    for (s, v) in sequents.iter().zip(&vs) {
        let core = v.core.is_some();
        summary.core_provable += core as usize;
        summary.int_provable += v.int as usize;
        summary.divergent += (!core && v.int) as usize;
        summary.violations += (core && !v.int) as usize;
        csv.serialize(Row {
            sequent: s.print(),
            weight: s.weight(),
            core: verdict(core),
            core_min_height: v.core,
            int: verdict(v.int),
            divergent: !core && v.int,
        })?;
    }
    let table = String::from_utf8(csv.into_inner()?)?;
    let summary_json = serde_json::to_string_pretty(&summary)?;
    match out {
        Some(path) => {
            write_file(path, &table)?;
            println!("{summary_json}");
        }
        None => {
            print!("{table}");
            eprintln!("{summary_json}");
        }
    }
    eprintln!(
        "{}: {} sequents, {} Core provable, {} intuitionistically provable, {} divergent",
        family.describe(),
        summary.rows,
        summary.core_provable,
        summary.int_provable,
        summary.divergent
    );
    Ok(if summary.violations == 0 { PROVABLE } else { DISAGREEMENT })
}

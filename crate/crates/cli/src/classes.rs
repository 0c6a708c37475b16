//! The `classes` subcommand.

use serde::Serialize;
use swlab_core::corpus::{corpus, CorpusEntry};
use swlab_core::pipeline::{compute_report_with, Options, PipelineError, SwReport};
use swlab_core::SimplicialComplex;

use crate::report::{core_failure, sha256_hex, write_json, ErrorInfo, Failure, Tool, SCHEMA, TOOL};
use crate::ClassesArgs;

#[derive(Serialize)]
struct InputInfo {
    kind: &'static str,
    name: String,
    sha256: String,
}

#[derive(Serialize)]
struct Expected {
    betti: Vec<usize>,
    w_nonzero: Vec<bool>,
}

#[derive(Serialize)]
struct ReportFile<'a> {
    schema: u32,
    tool: Tool,
    input: InputInfo,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    conflict_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected: Option<Expected>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<&'a SwReport>,
}

struct Loaded {
    complex: SimplicialComplex,
    entry: Option<CorpusEntry>,
}

fn load(args: &ClassesArgs) -> (InputInfo, Result<Loaded, Failure>) {
    if let Some(name) = &args.corpus {
        let mut input = InputInfo { kind: "corpus", name: name.clone(), sha256: String::new() };
        let loaded = corpus(name).map_err(core_failure).map(|(entry, complex)| {
            input.sha256 = sha256_hex(swlab_core::io::serialize_complex(&complex).as_bytes());
            Loaded { complex, entry: Some(entry) }
        });
        return (input, loaded);
    }
    let path = args.file.as_ref().expect("clap requires a file or --corpus");
    let mut input = InputInfo { kind: "file", name: path.display().to_string(), sha256: String::new() };
    let bytes = match std::fs::read(path) {
        Ok(b) => b,
        Err(e) => {
            let f = Failure::Usage(format!("cannot read {}: {e}", input.name));
            return (input, Err(f));
        }
    };
    input.sha256 = sha256_hex(&bytes);
    let loaded = std::str::from_utf8(&bytes)
        .map_err(|e| Failure::Usage(format!("{} is not UTF-8: {e}", input.name)))
        .and_then(|text| swlab_core::io::parse_complex_str(text).map_err(core_failure))
        .map(|complex| Loaded { complex, entry: None });
    (input, loaded)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt(b: Option<bool>) -> &'static str {
    b.map_or("-", yes)
}

fn print_report(input: &InputInfo, r: &SwReport) {
    println!("input       {} {} (sha256 {})", input.kind, input.name, input.sha256);
    println!("dimension   {}", r.dim);
    println!("f-vector    {:?}   subdivided {:?}", r.f_vector, r.derived_f_vector);
    println!("betti mod 2 {:?}   euler characteristic {}", r.betti, r.euler_characteristic);
    println!("deg  dual cells  cocycle  HT cycle  nonzero  oracle  match  pairing");
    for d in &r.degrees {
        println!(
            "{:>3}  {:>10}  {:>7}  {:>8}  {:>7}  {:>6}  {:>5}  {:>7}",
            d.degree,
            d.dual_cells,
            yes(d.all_ones_is_cocycle),
            yes(d.ht_chain_is_cycle),
            yes(d.class_nonzero),
            yes(d.oracle_nonzero),
            opt(d.matches_oracle),
            opt(d.pairing_ok),
        );
    }
    let classes: Vec<String> = r
        .degrees
        .iter()
        .skip(1)
        .map(|d| format!("w{} {}", d.degree, if d.oracle_nonzero { "!= 0" } else { "= 0" }))
        .collect();
    println!("classes     {}", classes.join(", "));
    if let Some(t) = &r.timings {
        println!(
            "timings ms  subdivide {:.1}  homology {:.1}  oracle {:.1}  degrees {:.1}  pairing {:.1}",
            t.subdivide_ms, t.homology_ms, t.oracle_ms, t.degrees_ms, t.pairing_ms
        );
    }
}

fn expectation_failure(entry: &CorpusEntry, r: &SwReport) -> Option<Failure> {
    if r.betti != entry.expected_betti {
        return Some(Failure::Verification(format!("Betti numbers {:?}, expected {:?}", r.betti, entry.expected_betti)));
    }
    if r.w_pattern() != entry.expected_w {
        return Some(Failure::Verification(format!("class pattern {:?}, expected {:?}", r.w_pattern(), entry.expected_w)));
    }
    None
}

pub fn run(args: &ClassesArgs) -> Result<(), Failure> {
    let (input, loaded) = load(args);
    let mut file = ReportFile { schema: SCHEMA, tool: TOOL, input, status: "ok", error: None, conflict_degree: None, expected: None, report: None };
    let loaded = match loaded {
        Ok(l) => l,
        Err(f) => return finish(args, file, Err(f)),
    };
    file.expected = loaded.entry.as_ref().map(|e| Expected { betti: e.expected_betti.clone(), w_nonzero: e.expected_w.clone() });
    let report = compute_report_with(&loaded.complex, Options { timings: args.diagnostics });
    let (report, outcome) = match report {
        Ok(r) => {
            let outcome = if !r.all_passed() {
                Err(Failure::Verification("a dual-cell check failed; see the per-degree table".into()))
            } else if let Some(f) = loaded.entry.as_ref().and_then(|e| expectation_failure(e, &r)) {
                Err(f)
            } else {
                Ok(())
            };
            (r, outcome)
        }
        Err(PipelineError::OracleConflict { degree, report }) => {
            file.conflict_degree = Some(degree);
            let msg = format!("dual-cell class differs from the Wu-formula class in degree {degree}");
            (*report, Err(Failure::Verification(msg)))
        }
        Err(PipelineError::Core(e)) => return finish(args, file, Err(core_failure(e))),
    };
    print_report(&file.input, &report);
    println!("status      {}", if outcome.is_ok() { "ok" } else { "FAILED" });
    file.report = Some(&report);
    finish(args, file, outcome)
}

fn finish(args: &ClassesArgs, mut file: ReportFile<'_>, outcome: Result<(), Failure>) -> Result<(), Failure> {
    if let Some(path) = &args.report {
        if let Err(f) = &outcome {
            file.status = f.status();
            file.error = Some(f.into());
        }
        write_json(path, &file)?;
    }
    outcome
}

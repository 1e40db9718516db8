use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use bmult_core::catalog::{self, CatalogEntry};
use bmult_core::cocycle::{self, OracleOptions, DEFAULT_ORACLE_BOUND};
use bmult_core::pcgroup::parse_document;
use bmult_core::schur::{self, criterion_class3, EngineOptions};
use bmult_core::Error;
use rayon::prelude::*;
use serde::Serialize;

use crate::report::*;
use crate::{Method, MethodOptions};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_INCONSISTENT: u8 = 2;
pub const EXIT_DISAGREEMENT: u8 = 3;
pub const EXIT_RESOURCE: u8 = 4;
pub const EXIT_INTERNAL: u8 = 5;

const CATALOG_PREFIX: &str = "catalog:";

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. }
        | Error::Semantic { .. }
        | Error::Io { .. }
        | Error::UnknownKey(_)
        | Error::InvalidParameter(_) => EXIT_INPUT,
        Error::Inconsistent { .. } => EXIT_INCONSISTENT,
        Error::EnumerationBound { .. } | Error::OracleBound { .. } | Error::UnstableTailExponent { .. } => {
            EXIT_RESOURCE
        }
        Error::Dimension { .. } | Error::NotInSubmodule | Error::Verification(_) => EXIT_INTERNAL,
    }
}

fn describe(e: &Error) -> String {
    match e {
        Error::Inconsistent { failures } => format!("{e}: {}", failures.join("; ")),
        _ => e.to_string(),
    }
}

fn fail(e: &Error) -> u8 {
    eprintln!("error: {}", describe(e));
    exit_code(e)
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

/// Loads a file path or `catalog:` descriptor.
pub fn load(input: &str) -> Result<CatalogEntry, Error> {
    match input.strip_prefix(CATALOG_PREFIX) {
        Some(descriptor) => catalog::entry(descriptor),
        None => catalog::load_presentation_file(Path::new(input)),
    }
}

pub fn check(input: &str, json: bool) -> u8 {
    let presentation = match input.strip_prefix(CATALOG_PREFIX) {
        Some(descriptor) => catalog::entry(descriptor).map(|e| e.presentation),
        None => std::fs::read_to_string(input)
            .map_err(|source| Error::Io {
                path: PathBuf::from(input),
                source,
            })
            .and_then(|text| parse_document(&text))
            .map(|doc| doc.presentation),
    };
    let pres = match presentation {
        Ok(p) => p,
        Err(e) => return fail(&e),
    };
    let consistency = pres.check_consistency();
    let report = CheckReport {
        schema_version: SCHEMA_VERSION,
        input: input.to_string(),
        order: pres.order().to_string(),
        consistent: consistency.is_consistent(),
        failures: consistency
            .failures
            .into_iter()
            .map(|f| OverlapSection {
                overlap: f.overlap,
                left: f.left,
                right: f.right,
            })
            .collect(),
    };
    if json {
        print_json(&report);
    } else if report.consistent {
        println!("{input}: consistent, order {}", report.order);
    } else {
        println!("{input}: inconsistent");
        for f in &report.failures {
            println!("  overlap {}: {} != {}", f.overlap, f.left, f.right);
        }
    }
    if report.consistent {
        EXIT_OK
    } else {
        EXIT_INCONSISTENT
    }
}

fn method_names(method: Method) -> Vec<String> {
    match method {
        Method::Exterior => vec!["exterior".into()],
        Method::Cocycle => vec!["cocycle".into()],
        Method::Both => vec!["exterior".into(), "cocycle".into()],
    }
}

/// Builds the report for one input.
pub fn build_report(
    input: &str,
    entry: &CatalogEntry,
    opts: &MethodOptions,
    with_bogomolov: bool,
) -> Result<Report, Error> {
    let start = Instant::now();
    let pres = &entry.presentation;
    let mut timing = BTreeMap::new();

    let exterior = if opts.method != Method::Cocycle {
        let t = Instant::now();
        let engine = EngineOptions {
            tail_exponent: opts.tail_exponent,
            stability_check: true,
            max_order: opts.max_order,
        };
        let r = schur::compute(pres, &engine, with_bogomolov)?;
        timing.insert("exterior".to_string(), t.elapsed().as_millis() as u64);
        Some(ExteriorSection {
            multiplier: r.multiplier,
            bogomolov: r.bogomolov,
            tail_exponent: r.tail_exponent,
            stable: r.stable,
            exterior_square_order: r.exterior_square_order.to_string(),
            derived_order: r.derived_order.to_string(),
        })
    } else {
        None
    };

    let cocycle = if opts.method != Method::Exterior {
        let t = Instant::now();
        let oracle_opts = OracleOptions {
            bound: opts.oracle_bound,
            ..OracleOptions::default()
        };
        let section = if with_bogomolov {
            let r = cocycle::oracle_report(pres, &oracle_opts, opts.bicyclic)?;
            CocycleSection {
                multiplier: r.multiplier,
                bogomolov: Some(r.bogomolov),
                modulus: r.modulus,
                maximal_abelian_subgroups: Some(r.maximal_abelian_subgroups),
                bicyclic_agrees: r.bicyclic_agrees,
            }
        } else {
            let oracle = cocycle::CocycleOracle::new(pres, &oracle_opts)?;
            CocycleSection {
                multiplier: oracle.multiplier().clone(),
                bogomolov: None,
                modulus: oracle.modulus(),
                maximal_abelian_subgroups: None,
                bicyclic_agrees: None,
            }
        };
        timing.insert("cocycle".to_string(), t.elapsed().as_millis() as u64);
        Some(section)
    } else {
        None
    };

    let (multiplier, bogomolov, agreement) = match (&exterior, &cocycle) {
        (Some(e), Some(c)) => {
            if e.multiplier == c.multiplier && e.bogomolov == c.bogomolov {
                (Some(e.multiplier.clone()), e.bogomolov.clone(), Some(true))
            } else {
                (None, None, Some(false))
            }
        }
        (Some(e), None) => (Some(e.multiplier.clone()), e.bogomolov.clone(), None),
        (None, Some(c)) => (Some(c.multiplier.clone()), c.bogomolov.clone(), None),
        (None, None) => unreachable!("at least one method runs"),
    };

    let criterion = with_bogomolov.then(|| {
        let c = criterion_class3(pres);
        CriterionSection {
            applies: c.applies,
            reason: c.reason,
        }
    });
    timing.insert("total".to_string(), start.elapsed().as_millis() as u64);

    Ok(Report {
        schema_version: SCHEMA_VERSION,
        command: if with_bogomolov { "b0" } else { "multiplier" }.to_string(),
        input: input.to_string(),
        key: entry.key.clone(),
        provenance: entry.provenance.clone(),
        warnings: entry.warnings.clone(),
        order: pres.order().to_string(),
        nilpotency_class: pres.nilpotency_class(),
        methods: method_names(opts.method),
        multiplier,
        bogomolov,
        agreement,
        exterior,
        cocycle,
        criterion,
        timing_ms: opts.timing.then_some(timing),
    })
}

fn warn_oracle_bound(opts: &MethodOptions) {
    if opts.method != Method::Exterior && opts.oracle_bound > DEFAULT_ORACLE_BOUND {
        eprintln!(
            "warning: oracle bound {} exceeds the default {DEFAULT_ORACLE_BOUND}; large groups may take minutes",
            opts.oracle_bound
        );
    }
}

fn print_human(r: &Report) {
    let show = |x: &Option<bmult_core::arith::AbelianInvariants>| {
        x.as_ref().map_or("-".to_string(), ToString::to_string)
    };
    println!("input      {}", r.input);
    println!("key        {}", r.key);
    println!("order      {}", r.order);
    println!(
        "class      {}",
        r.nilpotency_class.map_or("not nilpotent".to_string(), |c| c.to_string())
    );
    if r.agreement != Some(false) {
        println!("M(G)       {}", show(&r.multiplier));
        if r.command == "b0" {
            println!("B0(G)      {}", show(&r.bogomolov));
        }
    }
    if let Some(e) = &r.exterior {
        let stable = match e.stable {
            Some(true) => "stable",
            Some(false) => "unstable",
            None => "unchecked",
        };
        print!("exterior   M = {}", e.multiplier);
        if let Some(b) = &e.bogomolov {
            print!(", B0 = {b}");
        }
        println!(", tail exponent {} ({stable})", e.tail_exponent);
    }
    if let Some(c) = &r.cocycle {
        print!("cocycle    M = {}", c.multiplier);
        if let Some(b) = &c.bogomolov {
            print!(", B0 = {b}");
        }
        print!(", N = {}", c.modulus);
        if let Some(k) = c.maximal_abelian_subgroups {
            print!(", {k} maximal abelian subgroups");
        }
        if let Some(b) = c.bicyclic_agrees {
            print!(", bicyclic {}", if b { "agrees" } else { "differs" });
        }
        println!();
    }
    if let Some(c) = &r.criterion {
        match (&c.applies, &c.reason) {
            (true, _) => println!("criterion  applies (B0 = 0)"),
            (false, Some(reason)) => println!("criterion  does not apply: {reason}"),
            (false, None) => println!("criterion  does not apply"),
        }
    }
    for w in &r.warnings {
        println!("warning    {w}");
    }
    if let Some(t) = &r.timing_ms {
        let parts: Vec<String> = t.iter().map(|(k, v)| format!("{k} {v} ms")).collect();
        println!("timing     {}", parts.join(", "));
    }
}

fn report_disagreement(r: &Report) {
    if let (Some(e), Some(c)) = (&r.exterior, &r.cocycle) {
        let show = |x: &Option<bmult_core::arith::AbelianInvariants>| {
            x.as_ref().map_or("-".to_string(), ToString::to_string)
        };
        eprintln!(
            "error: methods disagree: exterior M = {}, B0 = {}; cocycle M = {}, B0 = {}",
            e.multiplier,
            show(&e.bogomolov),
            c.multiplier,
            show(&c.bogomolov)
        );
    }
}

pub fn compute(input: &str, opts: &MethodOptions, with_bogomolov: bool) -> u8 {
    warn_oracle_bound(opts);
    let entry = match load(input) {
        Ok(e) => e,
        Err(e) => return fail(&e),
    };
    let report = match build_report(input, &entry, opts, with_bogomolov) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    if opts.json {
        print_json(&report);
    } else {
        print_human(&report);
    }
    let code = exit_for(&report);
    if code == EXIT_DISAGREEMENT {
        report_disagreement(&report);
    }
    code
}

/// Exit code for a successfully built report: nonzero only on disagreement.
pub fn exit_for(report: &Report) -> u8 {
    if report.agreement == Some(false) {
        EXIT_DISAGREEMENT
    } else {
        EXIT_OK
    }
}

pub fn catalog_list(json: bool) -> u8 {
    let keys: Vec<KeySection> = catalog::KEYS
        .iter()
        .map(|k| KeySection {
            key: k.name.to_string(),
            parameters: k.parameters.to_string(),
            description: k.description.to_string(),
        })
        .collect();
    if json {
        print_json(&keys);
    } else {
        for k in &keys {
            println!("{}\n    parameters: {}\n    {}", k.key, k.parameters, k.description);
        }
    }
    EXIT_OK
}

pub fn catalog_emit(descriptor: &str, output: Option<&Path>) -> u8 {
    let descriptor = descriptor.strip_prefix(CATALOG_PREFIX).unwrap_or(descriptor);
    let entry = match catalog::entry(descriptor) {
        Ok(e) => e,
        Err(e) => return fail(&e),
    };
    let text = catalog::emit(&entry);
    match output {
        Some(path) => {
            if let Err(source) = std::fs::write(path, text) {
                return fail(&Error::Io {
                    path: path.to_path_buf(),
                    source,
                });
            }
        }
        None => print!("{text}"),
    }
    EXIT_OK
}

fn survey_files(directory: &Path) -> Result<Vec<PathBuf>, Error> {
    let io = |source| Error::Io {
        path: directory.to_path_buf(),
        source,
    };
    let mut files = Vec::new();
    for item in std::fs::read_dir(directory).map_err(io)? {
        let path = item.map_err(io)?.path();
        let hidden = path
            .file_name()
            .and_then(|n| n.to_str())
            .is_none_or(|n| n.starts_with('.'));
        if path.is_file() && !hidden {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

pub fn survey(directory: &Path, opts: &MethodOptions) -> u8 {
    warn_oracle_bound(opts);
    let files = match survey_files(directory) {
        Ok(f) => f,
        Err(e) => return fail(&e),
    };
    let entries: Vec<SurveyEntry> = files
        .par_iter()
        .map(|path| {
            let name = path.file_name().map_or_else(String::new, |n| n.to_string_lossy().into_owned());
            let input = path.to_string_lossy().into_owned();
            let result = catalog::load_presentation_file(path).and_then(|e| build_report(&input, &e, opts, true));
            match result {
                Ok(report) => SurveyEntry {
                    file: name,
                    report: Some(report),
                    error: None,
                },
                Err(e) => SurveyEntry {
                    file: name,
                    report: None,
                    error: Some(ErrorSection {
                        exit_code: exit_code(&e),
                        message: describe(&e),
                    }),
                },
            }
        })
        .collect();
    let reports = || entries.iter().filter_map(|e| e.report.as_ref());
    let summary = SurveySummary {
        files: entries.len(),
        computed: reports().count(),
        errors: entries.iter().filter(|e| e.error.is_some()).count(),
        disagreements: reports().filter(|r| r.agreement == Some(false)).count(),
        nontrivial_bogomolov: reports()
            .filter(|r| r.bogomolov.as_ref().is_some_and(|b| !b.is_trivial()))
            .count(),
    };
    let report = SurveyReport {
        schema_version: SCHEMA_VERSION,
        directory: directory.to_string_lossy().into_owned(),
        methods: method_names(opts.method),
        entries,
        summary,
    };
    if opts.json {
        print_json(&report);
    } else {
        for e in &report.entries {
            match (&e.report, &e.error) {
                (Some(r), _) if r.agreement == Some(false) => println!("{}: methods disagree", e.file),
                (Some(r), _) => println!(
                    "{}: order {}, M = {}, B0 = {}",
                    e.file,
                    r.order,
                    r.multiplier.as_ref().map_or("-".into(), ToString::to_string),
                    r.bogomolov.as_ref().map_or("-".into(), ToString::to_string)
                ),
                (None, Some(err)) => println!("{}: error (exit {}): {}", e.file, err.exit_code, err.message),
                (None, None) => unreachable!("entry has a report or an error"),
            }
        }
        let s = &report.summary;
        println!(
            "{} files, {} computed, {} errors, {} disagreements, {} with nontrivial B0",
            s.files, s.computed, s.errors, s.disagreements, s.nontrivial_bogomolov
        );
    }
    if report.summary.disagreements > 0 {
        EXIT_DISAGREEMENT
    } else {
        EXIT_OK
    }
}

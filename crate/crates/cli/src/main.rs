//! Command-line front end for the pentad library.
//!
//! Every command reads exact-rational JSON, writes JSON (or plain fraction
//! text with --plain) to standard output, and reports through exit codes:
//! 0 success or equivalent, 1 not equivalent, 2 degenerate input, 3 parse
//! or I/O error, 4 internal invariant violation. All randomness flows
//! through explicit seeds; identical invocations give identical output.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pentad::{
    all_c_values, brute_force_match, c_value, config_from_json, config_to_json,
    demo_translation, esym_signature, expected_instance_count, fingerprint, fingerprints_equal,
    format_rat, labeled_equivalent, match_configs, random_generic_config, relation_residuals,
    relation_residuals_from_table, relation_residuals_sampled, signature, verify_match,
    Configuration, Error, ProjMap, Rat, RelationFamily, RelationResidual,
    TranslationDemoReport,
};

#[derive(Parser)]
#[command(
    name = "pentad",
    version,
    about = "Exact projective invariants of plane point configurations"
)]
struct Cli {
    /// Print plain fraction text instead of JSON where both exist.
    #[arg(long, global = true)]
    plain: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Five-point invariants X, Y, a, b of a configuration or subset.
    Invariants {
        /// Configuration JSON file.
        #[arg(long)]
        input: PathBuf,
        /// Five labels i,j,k,l,m naming the subset; required when n != 5.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
        /// Which symmetric functions to report as (a, b).
        #[arg(long, value_enum, default_value_t = Mode::Power)]
        mode: Mode,
    },
    /// Signature multiset over all 5-subsets, its text form, or its digest.
    Fingerprint {
        /// Configuration JSON file.
        #[arg(long)]
        input: PathBuf,
        /// Structured JSON with entries and digest.
        #[arg(long, conflicts_with = "hash")]
        json: bool,
        /// Only the SHA-256 digest of the canonical text form.
        #[arg(long)]
        hash: bool,
    },
    /// Equivalence of two configurations; --labeled demands matching labels.
    Compare {
        a: PathBuf,
        b: PathBuf,
        /// Test label-preserving equivalence and print the witness map.
        #[arg(long)]
        labeled: bool,
    },
    /// Unlabeled equivalence with an explicit (permutation, map) witness.
    Match {
        a: PathBuf,
        b: PathBuf,
        /// Use the factorial oracle instead of the guided search.
        #[arg(long)]
        brute_force: bool,
    },
    /// Check the five relation families on a configuration.
    VerifyRelations {
        /// Configuration JSON file.
        #[arg(long)]
        input: PathBuf,
        /// Sample this many instances per family instead of enumerating.
        #[arg(long, conflicts_with = "self_test_fault")]
        sample: Option<usize>,
        /// Corrupt one invariant first to prove the checker reports it.
        #[arg(long)]
        self_test_fault: bool,
    },
    /// Sample a generic configuration deterministically.
    GenRandom {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Coordinates are integers in [-bound, bound].
        #[arg(long, default_value_t = 30)]
        bound: i64,
    },
    /// Run the translation-group subset-distribution demonstration.
    DemoTranslation {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Power sums of the c-multiset.
    Power,
    /// Elementary symmetric functions of the c-multiset.
    Esym,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Parse(_) => 3,
                _ => 2,
            }
        }
    }
}

fn dispatch(cli: &Cli) -> pentad::Result<i32> {
    match &cli.command {
        Command::Invariants { input, subset, mode } => {
            cmd_invariants(input, subset.as_deref(), *mode, cli.plain)
        }
        Command::Fingerprint { input, json, hash } => {
            cmd_fingerprint(input, *json, *hash)
        }
        Command::Compare { a, b, labeled } => cmd_compare(a, b, *labeled, cli.plain),
        Command::Match { a, b, brute_force } => cmd_match(a, b, *brute_force, cli.plain),
        Command::VerifyRelations { input, sample, self_test_fault } => {
            cmd_verify_relations(input, *sample, *self_test_fault, cli.plain)
        }
        Command::GenRandom { n, seed, bound } => cmd_gen_random(*n, *seed, *bound, cli.plain),
        Command::DemoTranslation { n, seed } => cmd_demo_translation(*n, *seed, cli.plain),
    }
}

fn read_config(path: &Path) -> pentad::Result<Configuration> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    config_from_json(&text)
}

fn map_rows(map: &ProjMap) -> Value {
    let rows: Vec<Value> = map
        .entries()
        .iter()
        .map(|row| Value::Array(row.iter().map(|v| Value::String(v.to_string())).collect()))
        .collect();
    Value::Array(rows)
}

fn print_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("plain data serializes"));
}

fn cmd_invariants(
    input: &Path,
    subset: Option<&[usize]>,
    mode: Mode,
    plain: bool,
) -> pentad::Result<i32> {
    let config = read_config(input)?;
    let labels: Vec<usize> = match subset {
        Some(labels) => {
            if labels.len() != 5 {
                return Err(Error::InvalidLabels(format!(
                    "--subset takes exactly five labels, got {}",
                    labels.len()
                )));
            }
            labels.to_vec()
        }
        None if config.n() == 5 => vec![1, 2, 3, 4, 5],
        None => {
            return Err(Error::InvalidLabels(format!(
                "--subset is required when n = {} differs from 5",
                config.n()
            )));
        }
    };
    let sub = config.subconfig(&labels)?;
    let x = c_value(&sub, 1, 2, 3, 4, 5)?;
    let y = c_value(&sub, 2, 1, 3, 4, 5)?;
    let sig = match mode {
        Mode::Power => signature(&sub)?,
        Mode::Esym => esym_signature(&sub)?,
    };
    if plain {
        println!("X = {}", format_rat(&x));
        println!("Y = {}", format_rat(&y));
        println!("a = {}", format_rat(&sig.a));
        println!("b = {}", format_rat(&sig.b));
    } else {
        print_json(&json!({
            "X": format_rat(&x),
            "Y": format_rat(&y),
            "a": format_rat(&sig.a),
            "b": format_rat(&sig.b),
            "mode": match mode { Mode::Power => "power", Mode::Esym => "esym" },
            "subset": labels,
        }));
    }
    Ok(0)
}

fn cmd_fingerprint(input: &Path, as_json: bool, hash_only: bool) -> pentad::Result<i32> {
    let config = read_config(input)?;
    let fp = fingerprint(&config)?;
    if hash_only {
        println!("{}", fp.hash_hex());
    } else if as_json {
        let entries: Vec<Value> = fp
            .entries()
            .iter()
            .map(|(a, b)| {
                json!([
                    pentad::format_rat_explicit(a),
                    pentad::format_rat_explicit(b)
                ])
            })
            .collect();
        print_json(&json!({
            "n": fp.n(),
            "entries": entries,
            "hash": fp.hash_hex(),
        }));
    } else {
        // The canonical text form is already newline-terminated.
        print!("{}", fp.serialize());
    }
    Ok(0)
}

fn cmd_compare(a: &Path, b: &Path, labeled: bool, plain: bool) -> pentad::Result<i32> {
    let ca = read_config(a)?;
    let cb = read_config(b)?;
    if labeled {
        match labeled_equivalent(&ca, &cb)? {
            Some(map) => {
                if plain {
                    println!("equivalent");
                    print_map_plain(&map);
                } else {
                    print_json(&json!({"equivalent": true, "map": map_rows(&map)}));
                }
                Ok(0)
            }
            None => {
                if plain {
                    println!("not equivalent");
                } else {
                    print_json(&json!({"equivalent": false}));
                }
                Ok(1)
            }
        }
    } else {
        let equal = fingerprints_equal(&fingerprint(&ca)?, &fingerprint(&cb)?);
        if plain {
            println!("{}", if equal { "equivalent" } else { "not equivalent" });
        } else {
            print_json(&json!({"equivalent": equal}));
        }
        Ok(if equal { 0 } else { 1 })
    }
}

fn cmd_match(a: &Path, b: &Path, brute: bool, plain: bool) -> pentad::Result<i32> {
    let ca = read_config(a)?;
    let cb = read_config(b)?;
    let result = if brute {
        brute_force_match(&ca, &cb)?
    } else {
        match_configs(&ca, &cb)?
    };
    match result {
        Some(r) => {
            if !verify_match(&ca, &cb, &r) {
                eprintln!("error: matcher produced an unverifiable witness");
                return Ok(4);
            }
            if plain {
                let perm: Vec<String> = r.perm.iter().map(|l| l.to_string()).collect();
                println!("perm: {}", perm.join(" "));
                print_map_plain(&r.map);
            } else {
                print_json(&json!({"perm": r.perm, "map": map_rows(&r.map)}));
            }
            Ok(0)
        }
        None => {
            if plain {
                println!("not equivalent");
            } else {
                print_json(&json!({"equivalent": false}));
            }
            Ok(1)
        }
    }
}

fn print_map_plain(map: &ProjMap) {
    for row in map.entries() {
        println!("{} {} {}", row[0], row[1], row[2]);
    }
}

/// Per-family checked counts and max |residual|; the residual vector comes
/// from the library, aggregation happens here.
fn aggregate(residuals: &[RelationResidual]) -> BTreeMap<&'static str, (usize, Rat)> {
    use num_traits::{Signed, Zero};
    let mut out: BTreeMap<&'static str, (usize, Rat)> = BTreeMap::new();
    for family in RelationFamily::ALL {
        out.insert(family.id(), (0, Rat::zero()));
    }
    for r in residuals {
        let entry = out.get_mut(r.family.id()).expect("all families present");
        entry.0 += 1;
        let abs = r.residual.abs();
        if abs > entry.1 {
            entry.1 = abs;
        }
    }
    out
}

fn cmd_verify_relations(
    input: &Path,
    sample: Option<usize>,
    fault: bool,
    plain: bool,
) -> pentad::Result<i32> {
    use num_traits::Zero;
    let config = read_config(input)?;
    let n = config.n();
    let (mode, residuals) = if fault {
        let mut table = all_c_values(&config)?;
        let (index, value) = {
            let (i, v) = table.iter().next().ok_or_else(|| {
                Error::DegenerateInput("relation checking needs at least five points".into())
            })?;
            (i.clone(), v.clone())
        };
        // Off-by-one corruption of a single invariant; every relation
        // touching it must light up.
        table.set(index, value + pentad::rat_int(1));
        ("fault-injected", relation_residuals_from_table(&table)?)
    } else if let Some(per_family) = sample {
        ("sampled", relation_residuals_sampled(&config, per_family)?)
    } else {
        (
            if n <= 7 { "full" } else { "sampled" },
            relation_residuals(&config)?,
        )
    };

    let by_family = aggregate(&residuals);
    // Full enumeration must hit the closed-form instance counts exactly; a
    // mismatch means the checker itself is broken.
    if mode == "full" {
        for family in RelationFamily::ALL {
            let expected = expected_instance_count(family, n);
            let got = by_family[family.id()].0;
            if got != expected {
                eprintln!(
                    "error: {} enumerated {got} instances, expected {expected}",
                    family.id()
                );
                return Ok(4);
            }
        }
    }
    let max_abs = by_family.values().map(|(_, m)| m.clone()).max().unwrap_or_else(Rat::zero);
    let all_zero = max_abs.is_zero();

    if plain {
        for (id, (count, max)) in &by_family {
            println!("{id}: {count} checked, max |residual| = {}", format_rat(max));
        }
        println!("{}", if all_zero { "all residuals zero" } else { "NONZERO RESIDUALS" });
    } else {
        let families: BTreeMap<&str, Value> = by_family
            .iter()
            .map(|(id, (count, max))| {
                (*id, json!({"checked": count, "max_abs_residual": format_rat(max)}))
            })
            .collect();
        print_json(&json!({
            "n": n,
            "mode": mode,
            "families": families,
            "max_abs_residual": format_rat(&max_abs),
            "all_zero": all_zero,
        }));
    }
    Ok(if all_zero { 0 } else { 4 })
}

fn cmd_gen_random(n: usize, seed: u64, bound: i64, plain: bool) -> pentad::Result<i32> {
    let config = random_generic_config(n, seed, bound)?;
    if plain {
        for p in config.points() {
            let [x, y, z] = p.coords();
            println!("{x} {y} {z}");
        }
    } else {
        println!("{}", config_to_json(&config));
    }
    Ok(0)
}

fn cmd_demo_translation(n: usize, seed: u64, plain: bool) -> pentad::Result<i32> {
    let report = demo_translation(n, seed)?;
    if plain {
        print_demo_plain(&report);
    } else {
        let points: Vec<String> = report.points.iter().map(format_rat).collect();
        print_json(&json!({
            "n": report.n,
            "seed": report.seed,
            "points": points,
            "mu2_negation_equal": report.mu2_negation_equal,
            "negation_not_translate": report.negation_not_translate,
            "counterexample_applicable": report.counterexample_applicable(),
            "translate_shift": format_rat(&report.translate_shift),
            "translate_mu3_equal": report.translate_mu3_equal,
            "translate_recovered": report.translate_recovered,
            "independent_mu3_differ": report.independent_mu3_differ,
            "all_applicable_hold": report.all_applicable_hold(),
        }));
    }
    Ok(if report.all_applicable_hold() { 0 } else { 4 })
}

fn print_demo_plain(report: &TranslationDemoReport) {
    let verdict = |ok: bool| if ok { "pass" } else { "FAIL" };
    println!("pair distribution blind to negation: {}", verdict(report.mu2_negation_equal));
    if report.counterexample_applicable() {
        println!("negation is not a translate: pass");
    } else {
        println!("negation is not a translate: skipped (symmetric base set)");
    }
    println!("triple distribution translation-invariant: {}", verdict(report.translate_mu3_equal));
    println!("shift recovered: {}", verdict(report.translate_recovered));
    println!("independent sample separated: {}", verdict(report.independent_mu3_differ));
    println!("{}", if report.all_applicable_hold() { "all applicable assertions hold" } else { "ASSERTION FAILED" });
}

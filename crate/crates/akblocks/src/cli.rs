//! Command-line front end: argument parsing, report generation in JSON or
//! plain text, and the persisted block atlas.
//!
//! Exit statuses: 0 success, 1 other failures, 2 parse or validation
//! errors, 3 budget exceeded (a truncated report is still emitted), 4 a
//! non-core block passed to a command that needs a core block.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::betaset::{render_abacus, Partition};
use crate::blocks::{
    block_of, enumerate_in_block, gamma_edges, moving_vector, BlockDescriptor,
    DEFAULT_ENUMERATION_BUDGET,
};
use crate::error::Error;
use crate::fock::{decomposition_matrix, level_one_reduction, DEFAULT_BASIS_BUDGET};
use crate::multipartition::{all_multipartitions, ChargedMultipartition};
use crate::scopes::{scopes_report, ScopesReport};
use crate::simples::{count_simples, count_simples_level_two, shape_and_type};
use crate::uglov::duality;
use crate::weyl::reduce_to_abar;

/// Schema identifier embedded in every JSON document.
pub const SCHEMA: &str = "akblocks/1";
/// Tool version embedded in every JSON document.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "akblocks", version, about = "Blocks of Ariki-Koike algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Core, weight, hub and moving vector of the block of a multipartition.
    Block(Common),
    /// Moving vector at the closed-alcove reduction of the charge.
    Mv(Common),
    /// Core-block test, weight graph and decomposability.
    CoreBlock(Common),
    /// Scopes data of a core block.
    Scopes(Common),
    /// Number of simple modules of a core block.
    Simples(Common),
    /// v-decomposition matrix of a block and, for core blocks, its level-one reduction.
    Decomp(Common),
    /// Members of a block (with --mp) or all blocks of a given size (with --n).
    Enumerate(Common),
    /// Persist one JSON document per block for sizes n..=n-max.
    Atlas(Common),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Debug, Args)]
struct Common {
    /// Quantum characteristic e ≥ 2.
    #[arg(long)]
    e: usize,
    /// Level ℓ ≥ 1.
    #[arg(long)]
    l: usize,
    /// Charge as a comma-separated list of ℓ integers.
    #[arg(long, allow_hyphen_values = true)]
    charge: String,
    /// Multipartition as a JSON array of ℓ arrays of parts.
    #[arg(long)]
    mp: Option<String>,
    /// Size n (enumerate, atlas lower bound).
    #[arg(long)]
    n: Option<usize>,
    /// Upper size bound for atlas.
    #[arg(long = "n-max")]
    n_max: Option<usize>,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    output: Output,
    /// Cap on enumerated or computed objects.
    #[arg(long)]
    budget: Option<usize>,
    /// Directory for atlas files.
    #[arg(long = "out-dir")]
    out_dir: Option<PathBuf>,
}

enum Failure {
    Parse(String),
    Budget { message: String, partial: Value },
    NotCore(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget {
                message: e.to_string(),
                partial: Value::Null,
            },
            Error::NotCoreBlock(_) => Failure::NotCore(e.to_string()),
            Error::InvalidParameter(_) | Error::RankMismatch { .. } | Error::Shape(_) => {
                Failure::Parse(e.to_string())
            }
            other => Failure::Other(other.to_string()),
        }
    }
}

type CmdResult = std::result::Result<Report, Failure>;

struct Report {
    json: Value,
    text: String,
}

/// Runs the tool on `args` (including the program name), writing data to
/// `out` and diagnostics to `err`; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return 0;
                }
                _ => 2,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let (name, common) = match &cli.command {
        Command::Block(c) => ("block", c),
        Command::Mv(c) => ("mv", c),
        Command::CoreBlock(c) => ("core-block", c),
        Command::Scopes(c) => ("scopes", c),
        Command::Simples(c) => ("simples", c),
        Command::Decomp(c) => ("decomp", c),
        Command::Enumerate(c) => ("enumerate", c),
        Command::Atlas(c) => ("atlas", c),
    };
    let result = match &cli.command {
        Command::Block(c) => cmd_block(c),
        Command::Mv(c) => cmd_mv(c),
        Command::CoreBlock(c) => cmd_core_block(c),
        Command::Scopes(c) => cmd_scopes(c),
        Command::Simples(c) => cmd_simples(c),
        Command::Decomp(c) => cmd_decomp(c),
        Command::Enumerate(c) => cmd_enumerate(c),
        Command::Atlas(c) => cmd_atlas(c, err),
    };
    match result {
        Ok(report) => {
            emit(out, common.output, name, false, &report.json, &report.text);
            0
        }
        Err(Failure::Parse(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Budget { message, partial }) => {
            let _ = writeln!(err, "error: {message}");
            let json = json!({ "error": message, "partial": partial });
            let text = format!("truncated: {message}\n");
            emit(out, common.output, name, true, &json, &text);
            3
        }
        Err(Failure::NotCore(m)) => {
            let _ = writeln!(err, "error: {m}");
            4
        }
        Err(Failure::Other(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}

/// Wraps a result in the versioned JSON envelope.
pub fn envelope(command: &str, truncated: bool, result: &Value) -> Value {
    json!({
        "schema": SCHEMA,
        "version": VERSION,
        "command": command,
        "truncated": truncated,
        "result": result,
    })
}

fn emit(out: &mut dyn Write, mode: Output, name: &str, truncated: bool, json: &Value, text: &str) {
    match mode {
        Output::Json => {
            let doc = envelope(name, truncated, json);
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
        }
        Output::Text => {
            let _ = write!(out, "{text}");
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn parse_charge(c: &Common) -> std::result::Result<Vec<i64>, Failure> {
    if c.e < 2 {
        return Err(Failure::Parse(format!("e must be at least 2, got {}", c.e)));
    }
    if c.l < 1 {
        return Err(Failure::Parse("l must be at least 1".into()));
    }
    let charge = c
        .charge
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Failure::Parse(format!("bad charge {:?}: {e}", c.charge)))?;
    if charge.len() != c.l {
        return Err(Failure::Parse(format!(
            "charge has {} entries but l = {}",
            charge.len(),
            c.l
        )));
    }
    Ok(charge)
}

fn parse_input(c: &Common) -> std::result::Result<ChargedMultipartition, Failure> {
    let charge = parse_charge(c)?;
    let raw =
        c.mp.as_ref()
            .ok_or_else(|| Failure::Parse("--mp is required".into()))?;
    let parts: Vec<Vec<usize>> =
        serde_json::from_str(raw).map_err(|e| Failure::Parse(format!("bad --mp {raw:?}: {e}")))?;
    if parts.len() != c.l {
        return Err(Failure::Parse(format!(
            "multipartition has {} components but l = {}",
            parts.len(),
            c.l
        )));
    }
    let comps = parts
        .into_iter()
        .map(|p| {
            let p: Vec<usize> = p.into_iter().filter(|&x| x > 0).collect();
            let sorted = p.windows(2).all(|w| w[0] >= w[1]);
            if sorted {
                Ok(Partition::from_parts(&p))
            } else {
                Err(Failure::Parse(format!("{p:?} is not a partition")))
            }
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(ChargedMultipartition::new(comps, charge, c.e)?)
}

fn block_text(b: &BlockDescriptor) -> String {
    let j = b.to_json();
    let mut s = String::new();
    s.push_str(&format!(
        "e = {}, l = {}, charge = {:?}, size = {}\n",
        j.e, j.l, j.charge, j.size
    ));
    s.push_str(&format!(
        "weight = {}\nhub = {:?}\nmv = {:?}\n",
        j.weight, j.hub, j.mv
    ));
    s.push_str(&format!(
        "reduced charge = {:?}\nr* = {:?}\n",
        j.reduced_charge, j.r_star
    ));
    s.push_str(&format!(
        "w0 = (perm {:?}, trans {:?})\n",
        j.w0_perm, j.w0_trans
    ));
    s.push_str(&format!(
        "core block = {}\ncore = {}\n",
        j.core_block,
        b.core()
    ));
    if let Ok(ab) = render_abacus(b.core(), b.e()) {
        s.push_str(&ab);
    }
    s
}

fn cmd_block(c: &Common) -> CmdResult {
    let lm = parse_input(c)?;
    let b = block_of(&lm)?;
    Ok(Report {
        json: to_value(&b.to_json()),
        text: block_text(&b),
    })
}

fn cmd_mv(c: &Common) -> CmdResult {
    let lm = parse_input(c)?;
    let (w, reduced) = reduce_to_abar(lm.charge(), lm.e());
    let mv = moving_vector(&lm, &w)?;
    let img = duality(&crate::weyl::right_action(&lm, &w)?)?;
    let b = block_of(&lm)?;
    let json = json!({
        "mv": mv,
        "reduced_charge": reduced,
        "duality_multipartition": img.multipartition.iter().map(|p| p.parts().to_vec()).collect::<Vec<_>>(),
        "duality_charge": img.charge,
        "canonical_mv": b.mv(),
        "canonical_reduced_charge": b.reduced_charge(),
    });
    let text = format!(
        "mv = {mv:?} at charge {reduced:?}\ncanonical mv = {:?} at charge {:?}\n",
        b.mv(),
        b.reduced_charge()
    );
    Ok(Report { json, text })
}

fn cmd_core_block(c: &Common) -> CmdResult {
    let lm = parse_input(c)?;
    let b = block_of(&lm)?;
    let core = b.is_core_block();
    let decomposable = if core {
        Some(b.is_decomposable()?)
    } else {
        None
    };
    let edges = if core {
        gamma_edges(b.mv())
    } else {
        Vec::new()
    };
    let bound = (b.l() / 2) * b.l().div_ceil(2) * b.e();
    let json = json!({
        "core_block": core,
        "mv": b.mv(),
        "weight": b.weight(),
        "weight_bound": bound,
        "decomposable": decomposable,
        "gamma_edges": edges,
    });
    let text = format!(
        "core block = {core}\nmv = {:?}\nweight = {} (bound {bound})\ndecomposable = {}\n",
        b.mv(),
        b.weight(),
        decomposable.map_or("n/a".to_string(), |d| d.to_string())
    );
    Ok(Report { json, text })
}

fn core_block_of(c: &Common) -> std::result::Result<BlockDescriptor, Failure> {
    let lm = parse_input(c)?;
    let b = block_of(&lm)?;
    b.require_core()?;
    Ok(b)
}

fn scopes_text(r: &ScopesReport) -> String {
    format!(
        "mv = {:?}\ny = {:?}\nz = {:?}\nfrak y = {}\nj_B = {}\nsigma = {:?}\ntau = {:?}\nSc = {:?}\ninitial = {}\nrouquier = {}\nclass count = {}\n",
        r.mv, r.y, r.z, r.frak_y, r.j_b, r.sigma, r.tau, r.scopes_vector, r.initial, r.rouquier, r.class_count
    )
}

fn cmd_scopes(c: &Common) -> CmdResult {
    let b = core_block_of(c)?;
    let r = scopes_report(&b)?;
    Ok(Report {
        json: to_value(&r),
        text: scopes_text(&r),
    })
}

fn cmd_simples(c: &Common) -> CmdResult {
    let b = core_block_of(c)?;
    let count = count_simples(&b)?;
    let (shape, ty) = shape_and_type(&b)?;
    let binomial = if b.l() == 2 {
        Some(count_simples_level_two(&b)?)
    } else {
        None
    };
    let json = json!({
        "count": count.to_string(),
        "shape": shape.parts(),
        "type": ty,
        "binomial": binomial.map(|x| x.to_string()),
    });
    let text = format!("simples = {count}\nshape = {shape}\ntype = {ty:?}\n");
    Ok(Report { json, text })
}

fn cmd_decomp(c: &Common) -> CmdResult {
    let lm = parse_input(c)?;
    let b = block_of(&lm)?;
    let budget = c.budget.unwrap_or(DEFAULT_BASIS_BUDGET);
    let m = decomposition_matrix(&b, true, budget)?;
    let reduction = if b.is_core_block() {
        match level_one_reduction(&b, budget) {
            Ok(r) => json!({
                "applicable": true,
                "holds": r.holds(),
                "w_trans": r.w_trans,
                "u": r.u,
                "level_one_charge": r.level_one_charge,
                "row_images": r.row_images.iter().map(|p| p.parts().to_vec()).collect::<Vec<_>>(),
                "column_images": r.column_images.iter().map(|p| p.parts().to_vec()).collect::<Vec<_>>(),
                "mismatches": r.mismatches,
                "e_regular": r.e_regular,
                "vanishing": r.vanishing,
            }),
            Err(Error::NotApplicable(m)) => json!({ "applicable": false, "reason": m }),
            Err(e) => return Err(e.into()),
        }
    } else {
        json!({ "applicable": false, "reason": "not a core block" })
    };
    let json = json!({ "matrix": to_value(&m.to_json()), "level_one_reduction": reduction });
    Ok(Report {
        json,
        text: m.to_text(),
    })
}

fn label(lm: &ChargedMultipartition) -> Vec<Vec<usize>> {
    lm.components().iter().map(|p| p.parts().to_vec()).collect()
}

fn blocks_of_size(
    e: usize,
    charge: &[i64],
    n: usize,
    budget: usize,
) -> crate::Result<Vec<BlockDescriptor>> {
    let mut found: BTreeMap<String, BlockDescriptor> = BTreeMap::new();
    let all = all_multipartitions(charge.len(), n);
    if all.len() > budget {
        return Err(Error::BudgetExceeded {
            budget,
            context: format!("listing multipartitions of {n}"),
        });
    }
    for mp in all {
        let lm = ChargedMultipartition::new(mp, charge.to_vec(), e)?;
        let b = block_of(&lm)?;
        let k = serde_json::to_string(&b.key()).expect("serializable");
        found.entry(k).or_insert(b);
    }
    Ok(found.into_values().collect())
}

fn cmd_enumerate(c: &Common) -> CmdResult {
    let budget = c.budget.unwrap_or(DEFAULT_ENUMERATION_BUDGET);
    if c.mp.is_some() {
        let lm = parse_input(c)?;
        let b = block_of(&lm)?;
        let members = enumerate_in_block(&b, budget)?;
        let rows: Vec<Value> = members
            .iter()
            .map(|m| json!({ "multipartition": label(m), "kleshchev": m.is_kleshchev() }))
            .collect();
        let text: String = members
            .iter()
            .map(|m| format!("{m}{}\n", if m.is_kleshchev() { "  K" } else { "" }))
            .collect();
        return Ok(Report {
            json: json!({ "block": to_value(&b.to_json()), "members": rows }),
            text,
        });
    }
    let charge = parse_charge(c)?;
    let n =
        c.n.ok_or_else(|| Failure::Parse("enumerate needs --mp or --n".into()))?;
    let blocks = blocks_of_size(c.e, &charge, n, budget)?;
    let text: String = blocks
        .iter()
        .map(|b| {
            format!(
                "{} weight {} mv {:?}\n",
                b.representative(),
                b.weight(),
                b.mv()
            )
        })
        .collect();
    Ok(Report {
        json: json!({ "n": n, "blocks": blocks.iter().map(|b| to_value(&b.to_json())).collect::<Vec<_>>() }),
        text,
    })
}

/// Rotation-invariant form of a moving vector: its lexicographically least
/// cyclic rotation.
pub fn min_rotation(mv: &[usize]) -> Vec<usize> {
    (0..mv.len().max(1))
        .map(|k| {
            let mut r = mv.to_vec();
            r.rotate_left(k.min(mv.len()));
            r
        })
        .min()
        .unwrap_or_default()
}

/// The Scopes class identifier `(mv up to rotation, Sc)` of a core block.
pub fn class_id(mv: &[usize], sc: &[i64]) -> String {
    let mv: Vec<String> = min_rotation(mv).iter().map(|x| x.to_string()).collect();
    let sc: Vec<String> = sc.iter().map(|x| x.to_string()).collect();
    format!("mv={};sc={}", mv.join(","), sc.join(","))
}

/// The atlas document of one block.
pub fn atlas_document(b: &BlockDescriptor) -> crate::Result<Value> {
    let mut doc = json!({
        "representative": label(b.representative()),
        "block": to_value(&b.to_json()),
    });
    if b.is_core_block() {
        let r = scopes_report(b)?;
        doc["scopes_class"] = json!(class_id(b.mv(), &r.scopes_vector));
        doc["scopes"] = to_value(&r);
        doc["simples"] = json!(count_simples(b)?.to_string());
    }
    Ok(envelope("atlas", false, &doc))
}

fn write_atomic(path: &Path, contents: &str) -> std::result::Result<(), Failure> {
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, contents)
        .map_err(|e| Failure::Other(format!("writing {}: {e}", tmp.display())))?;
    fs::rename(&tmp, path).map_err(|e| {
        Failure::Other(format!(
            "renaming {} to {}: {e}",
            tmp.display(),
            path.display()
        ))
    })
}

fn cmd_atlas(c: &Common, err: &mut dyn Write) -> CmdResult {
    let charge = parse_charge(c)?;
    let dir = c
        .out_dir
        .clone()
        .ok_or_else(|| Failure::Parse("atlas needs --out-dir".into()))?;
    let lo = c.n.unwrap_or(0);
    let hi = c.n_max.unwrap_or(lo);
    let budget = c.budget.unwrap_or(DEFAULT_ENUMERATION_BUDGET);
    fs::create_dir_all(&dir)
        .map_err(|e| Failure::Other(format!("creating {}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for n in lo..=hi {
        let blocks = blocks_of_size(c.e, &charge, n, budget).map_err(|e| match e {
            Error::BudgetExceeded { .. } => Failure::Budget {
                message: e.to_string(),
                partial: json!({ "files": files.clone() }),
            },
            other => other.into(),
        })?;
        let _ = writeln!(err, "n = {n}: {} blocks", blocks.len());
        let docs: Vec<(String, String)> = blocks
            .par_iter()
            .enumerate()
            .map(|(k, b)| {
                let doc = atlas_document(b)?;
                let name = format!("block-n{n:03}-{k:04}.json");
                Ok((
                    name,
                    serde_json::to_string_pretty(&doc).expect("serializable") + "\n",
                ))
            })
            .collect::<crate::Result<_>>()?;
        docs.par_iter()
            .map(|(name, body)| write_atomic(&dir.join(name), body))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        files.extend(docs.into_iter().map(|(name, _)| name));
    }
    let text: String = files.iter().map(|f| format!("{f}\n")).collect();
    Ok(Report {
        json: json!({ "out_dir": dir.display().to_string(), "files": files }),
        text,
    })
}

//! Command dispatch.
//!
//! Exit codes: 0 = yes/ok, 1 = no, 2 = unknown, 64 = usage errors,
//! 65 = format or data errors, 70 = internal failures.

use crate::formats::abvass_text::{parse_abvass, serialize_abvass};
use crate::formats::dot;
use crate::formats::ll_text::{parse_ll, parse_theory, sequent_for, serialize_theory, LlItem};
use crate::formats::minsky_text::parse_minsky;
use crate::formats::witness::{from_str as witness_from_str, json_to_tree, tree_to_json, to_string_pretty};
use abvass::bounds::{bound_h, bound_hprime, tower};
use abvass::decide::{
    brute_force, decide_bounded_height, decide_expansive, decide_increasing, decide_lossy,
    decide_strict_bounded, default_caps, min_cover_antichains, Answer, Decision,
};
use abvass::gadgets::{gen_example_bvass, gen_minsky_sim, gen_tower_bvass, minsky_to_avass, GadgetInstance};
use abvass::logic::{
    abvass_to_theory, check_proof, ilz_to_abvass, prove_bounded, Calculus, Proof, ThetaFlavor,
};
use abvass::reduce::{
    coverability_view, eliminate_zero_tests, increasing_view, to_ordinary, to_pseudo_increasing,
};
use abvass::system::{Instance, LeafCondition, SemanticsMode, ZeroReading};
use abvass::tree::validate_tree;
use abvass::vecs::Nat;
use clap::{Parser, Subcommand};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Parser, Debug)]
#[command(name = "abvass", version, about = "Alternating branching VASS toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide reachability/coverability of an instance file
    Decide {
        file: PathBuf,
        #[arg(long, default_value = "auto")]
        procedure: String,
        /// Height cap for bounded and brute-force search
        #[arg(long)]
        height: Option<usize>,
        /// Value cap for capped searches
        #[arg(long)]
        cap: Option<u64>,
        /// Write the witness (on yes) as JSON
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Validate a witness JSON against an instance file
    Validate {
        file: PathBuf,
        #[arg(long)]
        witness: PathBuf,
    },
    /// Apply a reduction pass
    Reduce {
        file: PathBuf,
        #[arg(long)]
        pass: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate gadget instances
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Translate between logic and counter systems
    Translate {
        #[command(subcommand)]
        what: TranslateCommand,
    },
    /// Bounded cut-free proof search
    Prove {
        file: PathBuf,
        #[arg(long)]
        calculus: String,
        #[arg(long)]
        theory: Option<PathBuf>,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        /// Print the proof tree on success
        #[arg(long)]
        show_proof: bool,
    },
    /// Bound arithmetic: tower, H, H'
    Bounds {
        #[arg(long = "tower")]
        tower: Option<u64>,
        #[arg(long = "H", num_args = 3, value_names = ["D", "S", "M"])]
        h: Option<Vec<u64>>,
        #[arg(long = "Hprime", num_args = 3, value_names = ["D", "S", "M"])]
        hprime: Option<Vec<u64>>,
    },
    /// Export DOT renderings of systems or witnesses
    Export {
        #[command(subcommand)]
        what: ExportCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// The B_k tower-threshold hierarchy
    Tower {
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The worked five-state example BVASS
    Example {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The lossy-BVASS simulation of a Minsky machine
    MinskySim {
        machine: PathBuf,
        #[arg(long = "tower-k", default_value_t = 1)]
        tower_k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The zero-tests-via-forks AVASS encoding of a Minsky machine
    MinskyAvass {
        machine: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum TranslateCommand {
    /// Intuitionistic formula to counter-system instance
    LlToAbvass {
        file: PathBuf,
        #[arg(long)]
        calculus: String,
        #[arg(long)]
        full: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Counter-system instance to theory plus goal sequents
    AbvassToLl {
        file: PathBuf,
        #[arg(long, default_value = "ll")]
        flavor: String,
        /// Where to write the theory (.llt)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExportCommand {
    /// DOT of an instance file (.abvass) or a witness (.json)
    Dot {
        input: PathBuf,
        /// Instance file (needed when rendering a witness)
        #[arg(long)]
        instance: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
}

struct Failure {
    code: i32,
    message: String,
}

type CmdResult = Result<i32, Failure>;

fn data_err(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_DATA,
        message: msg.into(),
    }
}

fn usage_err(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: msg.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| data_err(format!("cannot read {}: {e}", path.display())))
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| data_err(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    let inst = parse_abvass(&read(path)?).map_err(|e| data_err(e.to_string()))?;
    let report = abvass::system::validate_instance(&inst);
    if !report.ok() {
        let msgs: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(data_err(format!("invalid instance: {}", msgs.join("; "))));
    }
    Ok(inst)
}

pub fn run(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Decide {
            file,
            procedure,
            height,
            cap,
            witness,
        } => cmd_decide(&file, &procedure, height, cap, witness.as_ref()),
        Command::Validate { file, witness } => cmd_validate(&file, &witness),
        Command::Reduce { file, pass, output } => cmd_reduce(&file, &pass, output.as_ref()),
        Command::Gen { what } => cmd_gen(what),
        Command::Translate { what } => cmd_translate(what),
        Command::Prove {
            file,
            calculus,
            theory,
            depth,
            show_proof,
        } => cmd_prove(&file, &calculus, theory.as_ref(), depth, show_proof),
        Command::Bounds { tower: t, h, hprime } => cmd_bounds(t, h, hprime),
        Command::Export { what } => cmd_export(what),
    }
}

/// Instances the antichain procedure applies to: top-down coverability form
/// (any-vector leaves, resets only) or lossy reachability.
fn coverability_form(inst: &Instance) -> bool {
    inst.leaf_condition == LeafCondition::AnyVector
        && inst.semantics.mode == SemanticsMode::Strict
        && (inst.system.zero.is_empty() || inst.semantics.zero_reading == ZeroReading::Reset)
}

fn decide_by_antichain(inst: &Instance) -> Result<Decision, Failure> {
    if inst.semantics.mode == SemanticsMode::Lossy {
        return decide_lossy(inst, true).map_err(|e| data_err(e.to_string()));
    }
    if !coverability_form(inst) {
        return Err(usage_err(
            "the antichain procedure needs a lossy instance or a coverability-form view",
        ));
    }
    let ac = min_cover_antichains(inst).map_err(|e| data_err(e.to_string()))?;
    if ac.covers(inst.root_state, &inst.root_vector) {
        // a lossy twin reuses the replay machinery, and its witness is
        // loss-free here because the leaves are unconstrained
        let mut twin = inst.clone();
        twin.semantics.mode = SemanticsMode::Lossy;
        let d = decide_lossy(&twin, true).map_err(|e| data_err(e.to_string()))?;
        Ok(Decision {
            procedure: "antichain",
            ..d
        })
    } else {
        Ok(Decision::no("antichain"))
    }
}

fn cmd_decide(
    file: &Path,
    procedure: &str,
    height: Option<usize>,
    cap: Option<u64>,
    witness_out: Option<&PathBuf>,
) -> CmdResult {
    let inst = load_instance(file)?;
    let caps_or_default = |fallback: Option<(usize, u64)>| -> Result<(usize, Nat), Failure> {
        match (height, cap) {
            (Some(h), Some(c)) => Ok((h, Nat::from(c))),
            (Some(h), None) => Ok((h, Nat::from(h as u64))),
            (None, Some(c)) => Ok((c as usize, Nat::from(c))),
            (None, None) => match default_caps(&inst) {
                Some(c) => Ok((c.height, c.value)),
                None => match fallback {
                    Some((h, c)) => Ok((h, Nat::from(c))),
                    None => Err(usage_err(
                        "the theoretical caps are not representable here; pass --height and --cap",
                    )),
                },
            },
        }
    };
    let decision = match procedure {
        "antichain" => decide_by_antichain(&inst)?,
        "bounded" => {
            let (h, c) = caps_or_default(None)?;
            decide_bounded_height(&inst, h, c).map_err(|e| data_err(e.to_string()))?
        }
        "brute" => {
            let h = height.unwrap_or(10);
            let c = cap.unwrap_or(10);
            brute_force(&inst, h, c).map_err(|e| data_err(e.to_string()))?
        }
        "auto" => match inst.semantics.mode {
            SemanticsMode::Lossy => decide_lossy(&inst, true).map_err(|e| data_err(e.to_string()))?,
            SemanticsMode::Strict if coverability_form(&inst) => decide_by_antichain(&inst)?,
            SemanticsMode::Strict => {
                let (h, c) = caps_or_default(None)?;
                decide_strict_bounded(&inst, h, c).map_err(|e| data_err(e.to_string()))?
            }
            SemanticsMode::Increasing => {
                decide_increasing(&inst, cap.unwrap_or(64)).map_err(|e| data_err(e.to_string()))?
            }
            SemanticsMode::Expansive => {
                decide_expansive(&inst, cap.unwrap_or(64)).map_err(|e| data_err(e.to_string()))?
            }
        },
        other => return Err(usage_err(format!("unknown procedure {other}"))),
    };
    match decision.answer {
        Answer::Yes => println!("yes ({})", decision.procedure),
        Answer::No => println!("no ({})", decision.procedure),
        Answer::Unknown => println!(
            "unknown ({}){}",
            decision.procedure,
            decision
                .diagnostics
                .as_deref()
                .map(|d| format!(": {d}"))
                .unwrap_or_default()
        ),
    }
    if let (Some(path), Some(tree)) = (witness_out, &decision.witness) {
        debug_assert!(validate_tree(&inst, tree).is_ok());
        let json = tree_to_json(&inst, tree);
        std::fs::write(path, to_string_pretty(&json))
            .map_err(|e| data_err(format!("cannot write witness: {e}")))?;
    }
    Ok(match decision.answer {
        Answer::Yes => EXIT_YES,
        Answer::No => EXIT_NO,
        Answer::Unknown => EXIT_UNKNOWN,
    })
}

fn cmd_validate(file: &Path, witness: &Path) -> CmdResult {
    let inst = load_instance(file)?;
    let node = witness_from_str(&read(witness)?).map_err(|e| data_err(e.to_string()))?;
    let tree = json_to_tree(&inst, &node).map_err(|e| data_err(e.to_string()))?;
    match validate_tree(&inst, &tree) {
        Ok(()) => {
            println!("ok");
            Ok(EXIT_YES)
        }
        Err(v) => {
            println!("invalid: {v}");
            Ok(EXIT_NO)
        }
    }
}

fn cmd_reduce(file: &Path, pass: &str, output: Option<&PathBuf>) -> CmdResult {
    let inst = load_instance(file)?;
    let red = match pass {
        "eliminate-zerotests" => eliminate_zero_tests(&inst),
        "ordinary" => to_ordinary(&inst),
        "coverability-view" => coverability_view(&inst),
        "increasing-view" => increasing_view(&inst),
        "pseudo-increasing" => to_pseudo_increasing(&inst),
        other => return Err(usage_err(format!("unknown pass {other}"))),
    }
    .map_err(|e| data_err(e.to_string()))?;
    write_out(output, &serialize_abvass(&red.instance))?;
    Ok(EXIT_YES)
}

fn gadget_text(g: &GadgetInstance) -> String {
    let mut out = String::new();
    for (i, role) in g.counter_legend.iter().enumerate() {
        let _ = writeln!(out, "# coord {i}: {role}");
    }
    out.push_str(&serialize_abvass(&g.instance));
    out
}

fn cmd_gen(what: GenCommand) -> CmdResult {
    match what {
        GenCommand::Tower { k, output } => {
            let g = gen_tower_bvass(k).map_err(|e| data_err(e.to_string()))?;
            write_out(output.as_ref(), &gadget_text(&g))?;
            Ok(EXIT_YES)
        }
        GenCommand::Example { output } => {
            let g = gen_example_bvass();
            write_out(output.as_ref(), &gadget_text(&g))?;
            Ok(EXIT_YES)
        }
        GenCommand::MinskySim {
            machine,
            tower_k,
            output,
        } => {
            let mm = parse_minsky(&read(&machine)?).map_err(|e| data_err(e.to_string()))?;
            let g = gen_minsky_sim(&mm.machine, mm.start, mm.halt, tower_k)
                .map_err(|e| data_err(e.to_string()))?;
            write_out(output.as_ref(), &gadget_text(&g))?;
            Ok(EXIT_YES)
        }
        GenCommand::MinskyAvass { machine, output } => {
            let mm = parse_minsky(&read(&machine)?).map_err(|e| data_err(e.to_string()))?;
            let g = minsky_to_avass(&mm.machine, mm.start, mm.halt)
                .map_err(|e| data_err(e.to_string()))?;
            write_out(output.as_ref(), &gadget_text(&g))?;
            Ok(EXIT_YES)
        }
    }
}

fn cmd_translate(what: TranslateCommand) -> CmdResult {
    match what {
        TranslateCommand::LlToAbvass {
            file,
            calculus,
            full,
            output,
        } => {
            let calc = Calculus::parse(&calculus)
                .ok_or_else(|| usage_err(format!("unknown calculus {calculus}")))?;
            let item = parse_ll(&read(&file)?).map_err(|e| data_err(e.to_string()))?;
            let formula = match item {
                LlItem::Formula(f) => f,
                LlItem::RawSequent { .. } => {
                    return Err(data_err("ll-to-abvass expects a bare formula"))
                }
            };
            let t = ilz_to_abvass(&formula, calc, full).map_err(|e| data_err(e.to_string()))?;
            let mut text = String::new();
            for (i, f) in t.subformulas.iter().enumerate() {
                let _ = writeln!(text, "# coord {i}: {f}");
            }
            text.push_str(&serialize_abvass(&t.instance));
            write_out(output.as_ref(), &text)?;
            Ok(EXIT_YES)
        }
        TranslateCommand::AbvassToLl {
            file,
            flavor,
            output,
        } => {
            let flavor = match flavor.as_str() {
                "ll" => ThetaFlavor::LL,
                "llc" => ThetaFlavor::LLC,
                other => return Err(usage_err(format!("unknown flavor {other}"))),
            };
            let inst = load_instance(&file)?;
            let enc = abvass_to_theory(&inst, flavor).map_err(|e| data_err(e.to_string()))?;
            write_out(output.as_ref(), &serialize_theory(&enc.theory))?;
            println!("goal: {}", enc.goal);
            println!("pure: {}", enc.pure_goal);
            Ok(EXIT_YES)
        }
    }
}

fn cmd_prove(
    file: &Path,
    calculus: &str,
    theory: Option<&PathBuf>,
    depth: usize,
    show_proof: bool,
) -> CmdResult {
    let calc = Calculus::parse(calculus)
        .ok_or_else(|| usage_err(format!("unknown calculus {calculus}")))?;
    let item = parse_ll(&read(file)?).map_err(|e| data_err(e.to_string()))?;
    let seq = sequent_for(&item, calc).map_err(data_err)?;
    let theory = match theory {
        Some(p) => Some(parse_theory(&read(p)?).map_err(|e| data_err(e.to_string()))?),
        None => None,
    };
    let out = prove_bounded(&seq, calc, theory.as_ref(), depth)
        .map_err(|e| data_err(e.to_string()))?;
    match out.answer {
        Answer::Yes => {
            let proof = out.proof.expect("yes answers carry proofs");
            check_proof(&proof, calc, theory.as_ref())
                .map_err(|e| Failure {
                    code: EXIT_INTERNAL,
                    message: format!("prover returned an invalid proof: {e}"),
                })?;
            println!("provable");
            if show_proof {
                print_proof(&proof, 0);
            }
            Ok(EXIT_YES)
        }
        Answer::No => {
            println!("unprovable (search space exhausted)");
            Ok(EXIT_NO)
        }
        Answer::Unknown => {
            println!("unknown (depth {depth} insufficient)");
            Ok(EXIT_UNKNOWN)
        }
    }
}

fn print_proof(p: &Proof, indent: usize) {
    println!("{}{} [{:?}]", "  ".repeat(indent), p.conclusion, p.rule);
    for prem in &p.premises {
        print_proof(prem, indent + 1);
    }
}

fn cmd_bounds(t: Option<u64>, h: Option<Vec<u64>>, hp: Option<Vec<u64>>) -> CmdResult {
    let mut printed = false;
    if let Some(n) = t {
        let v = tower(n).map_err(|e| data_err(e.to_string()))?;
        println!("{v}");
        printed = true;
    }
    if let Some(args) = h {
        let v = bound_h(args[0], args[1], args[2]).map_err(|e| data_err(e.to_string()))?;
        println!("{v}");
        printed = true;
    }
    if let Some(args) = hp {
        let v = bound_hprime(args[0], args[1], args[2]).map_err(|e| data_err(e.to_string()))?;
        println!("{v}");
        printed = true;
    }
    if !printed {
        return Err(usage_err("pass --tower N, --H D S M, or --Hprime D S M"));
    }
    Ok(EXIT_YES)
}

fn cmd_export(what: ExportCommand) -> CmdResult {
    match what {
        ExportCommand::Dot {
            input,
            instance,
            output,
        } => {
            let text = read(&input)?;
            let dot_text = if input.extension().map(|e| e == "json").unwrap_or(false) {
                let node = witness_from_str(&text).map_err(|e| data_err(e.to_string()))?;
                match instance {
                    Some(p) => {
                        let inst = load_instance(&p)?;
                        let tree =
                            json_to_tree(&inst, &node).map_err(|e| data_err(e.to_string()))?;
                        dot::witness_dot(&inst, &tree)
                    }
                    None => dot::witness_dot_json(&node),
                }
            } else {
                let inst = parse_abvass(&text).map_err(|e| data_err(e.to_string()))?;
                dot::system_dot(&inst)
            };
            std::fs::write(&output, dot_text)
                .map_err(|e| data_err(format!("cannot write {}: {e}", output.display())))?;
            Ok(EXIT_YES)
        }
    }
}

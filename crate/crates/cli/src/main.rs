//! `finsemi`: batch front end for the workbench.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use finsemi::forest::{build_forest, nilpotent_kernel_generators, verify_ramseyan, Forest};
use finsemi::graphs::{
    build_mn, gamma, lambda, lifting_words, stallings_fold, transition_monoid, tree_witness, LabeledDigraph,
};
use finsemi::omega::{catalog, check_law, parse_law, parse_laws, Law, Strategy};
use finsemi::sk::{self, Variant, Which};
use finsemi::words::{self, Alphabet, Substitution, Word};
use finsemi::{families, green, synthesis, FiniteSemigroup};

mod input;

#[derive(Parser)]
#[command(name = "finsemi", version, about = "Finite semigroup workbench")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format; plain text when omitted.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Element budget for closures and assignment budget for law checks.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Write the artifact here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Iterate the Thue-Morse substitution.
    Ptm {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "a")]
        letter: char,
    },
    /// Iterate a substitution (default a->abc, b->ac, c->b) and test repetitions.
    Subst {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "a")]
        letter: char,
        /// Images in alphabet order, comma separated, e.g. `abc,ac,b`.
        #[arg(long)]
        images: Option<String>,
        /// List the factors up to this length.
        #[arg(long)]
        factors: Option<usize>,
    },
    /// Flower digraph of comma separated words.
    Flower {
        #[arg(long)]
        words: String,
    },
    /// Stallings folding.
    Fold {
        #[command(flatten)]
        src: GraphSource,
        /// The fold of the flower of the n-th square-free iterates.
        #[arg(long, conflicts_with_all = ["graph", "words"])]
        lambda: Option<usize>,
    },
    /// Transition monoid of a digraph, of Γ_n or the tower M_n.
    TransitionMonoid {
        #[arg(long, conflicts_with_all = ["mn", "graph"])]
        gamma: Option<usize>,
        #[arg(long, conflicts_with = "graph")]
        mn: Option<usize>,
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Print size and predicates instead of the table.
        #[arg(long)]
        stats: bool,
    },
    /// Green's relations.
    Green {
        #[arg(long)]
        semigroup: String,
    },
    /// Check laws on a semigroup.
    Check {
        #[arg(long)]
        semigroup: String,
        /// Catalog name (e.g. `knast`, `power:4:3`) or a law such as `x^4 = x^3`.
        #[arg(long, required_unless_present = "laws")]
        law: Option<String>,
        /// File with one law per line.
        #[arg(long)]
        laws: Option<PathBuf>,
        /// Range every variable over the whole semigroup.
        #[arg(long)]
        exhaustive: bool,
    },
    /// The S_k / S_k(p) family.
    Sk {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long, value_enum, default_value = "s")]
        variant: WhichArg,
        /// Run the Mal'cev witness checks.
        #[arg(long)]
        witness: bool,
        /// Print the canonical form of this word over {a, b}.
        #[arg(long)]
        normalize: Option<String>,
    },
    /// Separate two increasing sequences by their words.
    Separate {
        #[arg(long)]
        seq1: String,
        #[arg(long)]
        seq2: String,
        #[arg(long, value_enum, default_value = "sk")]
        variant: FamilyArg,
        #[arg(long, default_value_t = 2)]
        p: usize,
        /// Number of sequence terms to try before giving up.
        #[arg(long, default_value_t = 60)]
        limit: usize,
    },
    /// Build and verify a Ramseyan factorization forest.
    Forest {
        #[arg(long)]
        semigroup: String,
        /// Letter images, e.g. `a=x,b=0`.
        #[arg(long)]
        images: String,
        #[arg(long)]
        word: String,
    },
    /// Lifting words for a prefix of an n-th Thue-Morse iterate.
    Lift {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        word: String,
    },
    /// Count distinct lifted elements level by level.
    TreeWitness {
        #[arg(long, default_value_t = 0)]
        base: usize,
        #[arg(long)]
        depth: usize,
    },
    /// The synthesis semigroup U(M_m, C_n, f) with f(i) = g^i.
    Synthesis {
        #[arg(long)]
        m: usize,
        /// Order of the cyclic group.
        #[arg(long, default_value_t = 2)]
        group: usize,
        /// Run the semilattice witness checks.
        #[arg(long)]
        witness: bool,
    },
    /// Generators of the preimage of zero under a map onto a nilpotent semigroup.
    KernelGens {
        #[arg(long)]
        semigroup: String,
        #[arg(long)]
        nilpotent: String,
        /// Image of each element by name, in element order, comma separated.
        #[arg(long)]
        phi: Option<String>,
        /// Generator names, comma separated; the recorded generators by default.
        #[arg(long)]
        gens: Option<String>,
    },
}

#[derive(Args)]
struct GraphSource {
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Comma separated words; the flower of these is folded.
    #[arg(long, conflicts_with = "graph")]
    words: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichArg {
    S,
    T,
    R,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Sk,
    Skp,
}

/// A verdict that did not hold. Reported with exit status 1.
#[derive(Debug)]
struct CheckFailed(String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

/// One result in the formats it supports.
struct Output {
    text: String,
    json: Value,
    /// Exact JSON text for exports that must re-import identically.
    json_text: Option<String>,
    tsv: Option<String>,
    dot: Option<String>,
    ok: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, json_text: None, tsv: None, dot: None, ok: true }
    }

    fn tsv(mut self, tsv: String) -> Self {
        self.tsv = Some(tsv);
        self
    }

    fn dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }

    fn failed_if(mut self, failed: bool) -> Self {
        self.ok = !failed;
        self
    }

    fn render(&self, format: Option<Format>) -> anyhow::Result<String> {
        let mut s = match format {
            None => self.text.clone(),
            Some(Format::Json) => match &self.json_text {
                Some(t) => t.clone(),
                None => serde_json::to_string_pretty(&self.json)?,
            },
            Some(Format::Tsv) => self.tsv.clone().ok_or_else(|| anyhow!("--format tsv is not available here"))?,
            Some(Format::Dot) => self.dot.clone().ok_or_else(|| anyhow!("--format dot is not available here"))?,
        };
        if !s.ends_with('\n') {
            s.push('\n');
        }
        Ok(s)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<CheckFailed>() => {
            eprintln!("check failed: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let out = dispatch(&cli.command, &cli.global)?;
    let text = out.render(cli.global.format)?;
    match &cli.global.out {
        Some(path) => write_atomic(path, &text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(out.ok)
}

/// Writes through a sibling temporary file and renames it into place.
fn write_atomic(path: &Path, text: &str) -> anyhow::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| anyhow!("--out needs a file name"))?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    std::fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
    std::fs::rename(&tmp, path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

fn dispatch(cmd: &Command, g: &Global) -> anyhow::Result<Output> {
    let budget = g.budget.unwrap_or(finsemi::DEFAULT_BUDGET);
    match cmd {
        Command::Ptm { n, letter } => {
            let mu = words::thue_morse();
            let l = mu.alphabet().letter(*letter).ok_or_else(|| anyhow!("--letter must be a or b"))?;
            Ok(word_report(&mu, l, *n, None))
        }
        Command::Subst { n, letter, images, factors } => {
            let sub = match images {
                Some(text) => {
                    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
                    let alphabet = Alphabet::infer(&parts.concat());
                    Substitution::from_strs(alphabet, &parts)?
                }
                None => words::square_free_sub(),
            };
            let l =
                sub.alphabet().letter(*letter).ok_or_else(|| anyhow!("--letter {letter:?} is not in the alphabet"))?;
            Ok(word_report(&sub, l, *n, *factors))
        }
        Command::Flower { words } => {
            let (ws, alphabet) = input::word_list(words)?;
            Ok(graph_output(&finsemi::graphs::flower(&ws, &alphabet)))
        }
        Command::Fold { src, lambda: lam } => {
            let folded = match (lam, &src.graph, &src.words) {
                (Some(n), _, _) => lambda(*n),
                (None, Some(path), _) => stallings_fold(&input::digraph(path)?),
                (None, None, Some(w)) => {
                    let (ws, alphabet) = input::word_list(w)?;
                    stallings_fold(&finsemi::graphs::flower(&ws, &alphabet))
                }
                _ => bail!("give one of --graph, --words or --lambda"),
            };
            let mut out = graph_output(&folded);
            out.text = format!("vertices={}\nedges={}\n{}", folded.vertex_count(), folded.edge_count(), out.text);
            Ok(out)
        }
        Command::TransitionMonoid { gamma: gm, mn, graph, stats } => {
            let tm = match (gm, mn, graph) {
                (Some(n), _, _) => transition_monoid(&gamma(*n), budget)?,
                (None, Some(n), _) => build_mn(*n, budget)?.levels.pop().expect("tower has a top"),
                (None, None, Some(path)) => transition_monoid(&input::digraph(path)?, budget)?,
                _ => bail!("give one of --gamma, --mn or --graph"),
            };
            let s = tm.semigroup();
            if *stats {
                let r = &tm.report;
                let mut text = String::new();
                writeln!(text, "size={}", r.size)?;
                writeln!(text, "aperiodic={}", r.aperiodic)?;
                writeln!(text, "inverse={}", r.inverse)?;
                writeln!(text, "contains_empty_map={}", r.contains_empty_map)?;
                writeln!(text, "identity_from_nonempty_word={}", r.identity_from_nonempty_word)?;
                writeln!(text, "semigroup_size={}", r.semigroup_size)?;
                writeln!(text, "size_without_empty_map={}", r.size_without_empty_map)?;
                Ok(Output::new(text, serde_json::to_value(r)?))
            } else {
                Ok(semigroup_output(s))
            }
        }
        Command::Green { semigroup } => {
            let s = input::semigroup(semigroup, budget)?;
            Ok(green_output(&s))
        }
        Command::Check { semigroup, law, laws, exhaustive } => {
            let s = input::semigroup(semigroup, budget)?;
            let mut all: Vec<Law> = Vec::new();
            if let Some(l) = law {
                all.push(law_arg(l)?);
            }
            if let Some(path) = laws {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                all.extend(parse_laws(&text)?);
            }
            let strategy = if *exhaustive { Strategy::Exhaustive } else { Strategy::IdempotentVars };
            let law_budget = g.budget.map_or(finsemi::omega::DEFAULT_LAW_BUDGET, |b| b as u64);
            let mut text = String::new();
            let mut rows = Vec::new();
            let mut tsv = String::from("law\tholds\twitness\n");
            let mut failed = false;
            for l in &all {
                let r = check_law(&s, l, strategy, law_budget)?;
                let witness = r.render_witness(&s);
                failed |= !r.holds;
                let label = l.name.clone().unwrap_or_else(|| l.to_string());
                match &witness {
                    None => writeln!(text, "{label}: holds")?,
                    Some(w) => writeln!(text, "{label}: fails at {w}")?,
                }
                writeln!(tsv, "{label}\t{}\t{}", r.holds, witness.clone().unwrap_or_default())?;
                rows.push(json!({
                    "law": l.to_string(),
                    "name": l.name,
                    "holds": r.holds,
                    "witness": witness,
                    "assignments": r.assignments as u64,
                }));
            }
            Ok(Output::new(text, json!({ "results": rows })).tsv(tsv).failed_if(failed))
        }
        Command::Sk { k, p, variant, witness, normalize } => {
            let v = match p {
                Some(p) => Variant::Skp(*p),
                None => Variant::Sk,
            };
            if let Some(w) = normalize {
                let word = Alphabet::ab().parse(w)?;
                let c = sk::normalize(&word, *k, v);
                return Ok(Output::new(c.to_string(), json!({ "word": w, "canonical": c.to_string() })));
            }
            if *witness {
                let report = sk::malcev_witness_check(*k, v).map_err(sk_error)?;
                let ok = report.projections_onto
                    && report.projections_homomorphic
                    && report.s_is_image_of_r
                    && report.preimages.iter().all(|p| p.isomorphism.is_some());
                let mut text = String::new();
                writeln!(text, "|R|={} |S|={} |T|={}", report.r_size, report.s_size, report.t_size)?;
                writeln!(
                    text,
                    "projections onto and homomorphic: {}",
                    report.projections_onto && report.projections_homomorphic
                )?;
                for pre in &report.preimages {
                    writeln!(
                        text,
                        "preimage of {} ({} elements) isomorphic to T: {}",
                        pre.idempotent,
                        pre.size,
                        pre.isomorphism.is_some()
                    )?;
                }
                writeln!(text, "S is an image of R: {}", report.s_is_image_of_r)?;
                return Ok(Output::new(text, serde_json::to_value(&report)?).failed_if(!ok));
            }
            let which = match variant {
                WhichArg::S => Which::S,
                WhichArg::T => Which::T,
                WhichArg::R => Which::R,
            };
            let built = sk::build(*k, v, which)?;
            let mut out = semigroup_output(&built.semigroup);
            out.text = format!("size={}\n{}\n", built.semigroup.len(), built.elements.join("\n"));
            Ok(out)
        }
        Command::Separate { seq1, seq2, variant, p, limit } => {
            let s = sk::parse_sequence(seq1)?;
            let t = sk::parse_sequence(seq2)?;
            let v = match variant {
                FamilyArg::Sk => Variant::Sk,
                FamilyArg::Skp => Variant::Skp(*p),
            };
            let r = sk::separation_check(&s, &t, v, *limit).map_err(sk_error)?;
            let mut text = String::new();
            writeln!(text, "j={} k={} stabilized_at={}", r.j, r.k, r.stabilized_at)?;
            writeln!(text, "image_s={}", r.image_s)?;
            writeln!(text, "image_t={}", r.image_t)?;
            writeln!(text, "matches_closed_form={}", r.matches_closed_form)?;
            writeln!(text, "separated={}", r.separated)?;
            let ok = r.separated && r.matches_closed_form;
            Ok(Output::new(text, serde_json::to_value(&r)?).failed_if(!ok))
        }
        Command::Forest { semigroup, images, word } => {
            let s = input::semigroup(semigroup, budget)?;
            let (alphabet, gen_images) = input::letter_images(images, &s)?;
            let w = alphabet.parse(word)?;
            if w.is_empty() {
                bail!("--word must be nonempty");
            }
            let f = build_forest(&gen_images, &s, &w);
            let verdict = verify_ramseyan(&f, &gen_images, &s);
            let mut text = String::new();
            tree_text(&f, f.root, &s, &alphabet, 0, &mut text);
            writeln!(text, "height={} bound={}", f.height(), 9 * s.len())?;
            writeln!(text, "verification={}", verdict.as_ref().map_or_else(|v| format!("{v:?}"), |_| "ok".into()))?;
            let js = json!({
                "forest": f.to_json(&s, &alphabet),
                "height": f.height(),
                "bound": 9 * s.len(),
                "verification": verdict.as_ref().map_or_else(|v| json!(v), |_| json!("ok")),
            });
            Ok(Output::new(text, js).dot(tree_dot(&f, &s, &alphabet)).failed_if(verdict.is_err()))
        }
        Command::Lift { n, word } => {
            let ab = Alphabet::ab();
            let w = ab.parse(word)?;
            let l = lifting_words(*n, &w)?;
            let text = format!("u={}\nv={}\nc={}\n", ab.render(&l.u), ab.render(&l.v), ab.char_of(l.c));
            let js = json!({ "u": ab.render(&l.u), "v": ab.render(&l.v), "c": ab.char_of(l.c).to_string() });
            Ok(Output::new(text, js))
        }
        Command::TreeWitness { base, depth } => {
            let r = tree_witness(*base, *depth)?;
            let mut text = String::new();
            let mut tsv = String::from("depth\tdistinct\tlower_bound\n");
            let mut ok = r.restrictions_agree;
            for (d, c) in r.counts.iter().enumerate() {
                writeln!(text, "depth {d}: {c} distinct (need {})", 1usize << d)?;
                writeln!(tsv, "{d}\t{c}\t{}", 1usize << d)?;
                ok &= *c >= 1 << d;
            }
            writeln!(text, "restrictions_agree={}", r.restrictions_agree)?;
            Ok(Output::new(text, serde_json::to_value(&r)?).tsv(tsv).failed_if(!ok))
        }
        Command::Synthesis { m, group, witness } => {
            if *group == 0 {
                bail!("--group must be at least 1");
            }
            let g = families::cyclic_group(*group);
            let f: Vec<usize> = (0..=*m).map(|i| i % group).collect();
            if *witness {
                return match synthesis::sl_witness(*m, &g, &f, budget) {
                    Ok(r) => {
                        let mut text = String::new();
                        writeln!(text, "|U|={} |K|={}", r.u_size, r.k_size)?;
                        writeln!(text, "phi homomorphism onto the 3-chain: {}", r.phi_is_homomorphism)?;
                        writeln!(text, "fibers over 0,1,2: {:?}", r.fibers)?;
                        writeln!(text, "J-classes in K: {}", r.k_j_classes)?;
                        writeln!(
                            text,
                            "maximal subgroups in K: {} all isomorphic to G: {}",
                            r.subgroups, r.subgroups_isomorphic
                        )?;
                        writeln!(text, "idempotents: {}", r.idempotents.join(" "))?;
                        writeln!(text, "note: {}", r.note)?;
                        Ok(Output::new(text, serde_json::to_value(&r)?))
                    }
                    Err(synthesis::SynthesisError::WitnessFailed(why)) => Err(CheckFailed(why).into()),
                    Err(e) => Err(e.into()),
                };
            }
            let syn = synthesis::synthesis_u(&families::capped_addition(*m), &g, &f, budget)?;
            Ok(semigroup_output(&syn.semigroup))
        }
        Command::KernelGens { semigroup, nilpotent, phi, gens } => {
            let s = input::semigroup(semigroup, budget)?;
            let n = input::semigroup(nilpotent, budget)?;
            let map: Vec<usize> = match phi {
                Some(text) => input::names(text, &n)?,
                None if s.len() == n.len() => (0..s.len()).collect(),
                None => bail!("--phi is required unless the two semigroups have the same size"),
            };
            if map.len() != s.len() {
                bail!("--phi lists {} images for {} elements", map.len(), s.len());
            }
            let a = match gens {
                Some(text) => input::names(text, &s)?,
                None => s.generators().map(<[usize]>::to_vec).unwrap_or_else(|| (0..s.len()).collect()),
            };
            let report =
                nilpotent_kernel_generators(&s, &n, &map, &a)?.ok_or_else(|| anyhow!("the target is not nilpotent"))?;
            let names = |xs: &[usize]| xs.iter().map(|&x| s.name(x).to_string()).collect::<Vec<_>>().join(" ");
            let mut text = String::new();
            writeln!(text, "n={}", report.n)?;
            writeln!(text, "kernel: {}", names(&report.kernel))?;
            for (label, r) in [("intersection", &report.intersection), ("literal", &report.literal)] {
                writeln!(text, "{label}: B = {}", names(&r.b))?;
                writeln!(text, "  contained in kernel: {}", r.contained_in_kernel)?;
                writeln!(text, "  generates kernel: {}", r.generates_kernel)?;
            }
            let ok = report.intersection.generates_kernel;
            Ok(Output::new(text, serde_json::to_value(&report)?).failed_if(!ok))
        }
    }
}

fn sk_error(e: sk::SkError) -> anyhow::Error {
    match e {
        sk::SkError::WitnessFailed(why) => CheckFailed(why).into(),
        sk::SkError::NotStabilized(n) => CheckFailed(format!("images did not stabilize within {n} terms")).into(),
        other => other.into(),
    }
}

fn law_arg(text: &str) -> anyhow::Result<Law> {
    if text.contains(['=', '<', '≤']) {
        Ok(parse_law(text)?)
    } else {
        Ok(catalog(text)?)
    }
}

fn word_report(sub: &Substitution, letter: words::Letter, n: usize, factors: Option<usize>) -> Output {
    let alphabet = sub.alphabet();
    let w: Word = sub.iterate(letter, n);
    let rendered = alphabet.render(&w);
    let mut js = json!({
        "word": rendered,
        "length": w.len(),
        "overlap_free": words::is_overlap_free(&w),
        "cube_free": words::is_cube_free(&w),
        "square_free": words::is_square_free(&w),
    });
    let mut text = rendered.clone();
    if let Some(maxlen) = factors {
        let present = words::factors(&w, maxlen);
        let missing: Vec<String> = (1..=maxlen)
            .flat_map(|len| words::all_words(alphabet.len(), len))
            .filter(|u| !present.contains(u))
            .map(|u| alphabet.render(&u))
            .collect();
        let present: Vec<String> = present.iter().map(|u| alphabet.render(u)).collect();
        text = format!("{text}\nfactors: {}\nmissing: {}", present.join(" "), missing.join(" "));
        js["factors"] = json!(present);
        js["missing"] = json!(missing);
    }
    Output::new(text, js)
}

fn graph_output(g: &LabeledDigraph) -> Output {
    let json_text = g.to_json();
    let js: Value = serde_json::from_str(&json_text).expect("digraph JSON reparses");
    let mut out = Output::new(json_text.clone(), js).dot(g.to_dot());
    out.json_text = Some(json_text);
    out
}

fn semigroup_output(s: &FiniteSemigroup) -> Output {
    let json_text = s.to_json();
    let js: Value = serde_json::from_str(&json_text).expect("semigroup JSON reparses");
    let mut out = Output::new(s.to_tsv(), js).tsv(s.to_tsv());
    out.json_text = Some(json_text);
    out
}

fn green_output(s: &FiniteSemigroup) -> Output {
    let g = green::green(s);
    let names = |classes: &[Vec<usize>]| -> Vec<Vec<String>> {
        classes.iter().map(|c| c.iter().map(|&x| s.name(x).to_string()).collect()).collect()
    };
    let counts = g.counts();
    let mut text = String::new();
    let _ = writeln!(
        text,
        "R={} L={} J={} H={} D={} regular D-classes={} D=J: {}",
        counts.r,
        counts.l,
        counts.j,
        counts.h,
        counts.d,
        counts.regular_d,
        g.d_equals_j()
    );
    for (i, class) in names(&g.j.classes).iter().enumerate() {
        let _ = writeln!(text, "J{i}: {}", class.join(" "));
    }
    let mut tsv = String::from("element\tR\tL\tJ\tH\tD\tidempotent\n");
    for x in 0..s.len() {
        let _ = writeln!(
            tsv,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            s.name(x),
            g.r.class_of[x],
            g.l.class_of[x],
            g.j.class_of[x],
            g.h.class_of[x],
            g.d.class_of[x],
            s.is_idempotent(x)
        );
    }
    let js = json!({
        "counts": counts,
        "d_equals_j": g.d_equals_j(),
        "r": names(&g.r.classes),
        "l": names(&g.l.classes),
        "j": names(&g.j.classes),
        "h": names(&g.h.classes),
        "d": names(&g.d.classes),
        "predicates": s.predicates(),
    });
    Output::new(text, js).tsv(tsv)
}

fn tree_text(f: &Forest, node: usize, s: &FiniteSemigroup, alphabet: &Alphabet, depth: usize, out: &mut String) {
    let n = &f.nodes[node];
    let _ = writeln!(out, "{}{} -> {}", "  ".repeat(depth), alphabet.render(&f.word[n.start..n.end]), s.name(n.image));
    for &c in &n.children {
        tree_text(f, c, s, alphabet, depth + 1, out);
    }
}

fn tree_dot(f: &Forest, s: &FiniteSemigroup, alphabet: &Alphabet) -> String {
    let mut out = String::from("digraph forest {\n");
    for (i, n) in f.nodes.iter().enumerate() {
        let _ = writeln!(out, "  {i} [label=\"{} : {}\"];", alphabet.render(&f.word[n.start..n.end]), s.name(n.image));
        for &c in &n.children {
            let _ = writeln!(out, "  {i} -> {c};");
        }
    }
    out.push_str("}\n");
    out
}

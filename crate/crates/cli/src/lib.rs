//! The `chvd` command line. [`run`] is the whole program minus process setup, so tests can
//! drive it with in-memory writers.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};

use chvd_core::dp::{self, SolveOptions};
use chvd_core::gadgets::{self, ReductionOutcome};
use chvd_core::graph::{is_chordal, subdivide_all_edges};
use chvd_core::matroid::{max_representative, representative_oracle_check, FamilyEntry, GraphicMatroid};
use chvd_core::oracle::{self, RandomSpec};
use chvd_core::treedec::{self, TreeDecomposition};
use chvd_core::{io, Error, VertexSet, WeightedGraph};

#[derive(Parser, Debug)]
#[command(name = "chvd", version, about = "Weighted chordal vertex deletion over tree decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve with the tree-decomposition dynamic program.
    Solve {
        graph: PathBuf,
        /// PACE-style decomposition; a min-fill heuristic is used when absent.
        #[arg(long)]
        td: Option<PathBuf>,
    },
    /// Solve by brute force (at most 22 vertices).
    Oracle { graph: PathBuf },
    /// Compare the solver with the brute-force oracle.
    Cross {
        graph: Option<PathBuf>,
        /// Number of seeded random graphs instead of a file.
        #[arg(long, conflicts_with = "graph")]
        random: Option<usize>,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 0.4)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        wmin: u64,
        #[arg(long, default_value_t = 9)]
        wmax: u64,
    },
    /// Generate instances.
    #[command(subcommand)]
    Gen(Gen),
    /// Validate a tree decomposition against a graph.
    CheckTd { graph: PathBuf, td: PathBuf },
    /// Run the built-in consistency checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Gen {
    /// Interval deletion instance reduced from a seeded Permutation Clique instance.
    PermClique {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Probability of each non-planted cross-row edge.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = gadgets::DEFAULT_K_CAP)]
        k_cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The choice gadget of order S.
    Choice {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Subdivide every edge; chordal deletion on the result is feedback vertex set.
    FvsSubdivision {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failed solution check or disagreement between solvers.
#[derive(Debug)]
struct InternalFailure(String);

impl std::fmt::Display for InternalFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InternalFailure {}

/// Input that parsed but failed validation.
#[derive(Debug)]
struct ValidationFailure(String);

impl std::fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ValidationFailure {}

/// 1 for parse and I/O errors, 2 for validation failures, 3 for internal failures.
fn exit_code(e: &anyhow::Error) -> i32 {
    if e.downcast_ref::<InternalFailure>().is_some() {
        return 3;
    }
    if e.downcast_ref::<ValidationFailure>().is_some() {
        return 2;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::Parse { .. } | Error::VertexOutOfRange { .. } | Error::SelfLoop(_)) => 1,
        Some(Error::Internal(_)) => 3,
        Some(_) => 2,
        None => 1,
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code(&e)
        }
    }
}

fn read_text(p: &Path) -> anyhow::Result<String> {
    fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
}

fn load_graph(p: &Path) -> anyhow::Result<WeightedGraph> {
    let text = read_text(p)?;
    io::read_graph(&text).with_context(|| format!("parsing {}", p.display()))
}

fn load_td(p: &Path, g: &WeightedGraph) -> anyhow::Result<TreeDecomposition> {
    let text = read_text(p)?;
    let (td, n) = io::read_td(&text).with_context(|| format!("parsing {}", p.display()))?;
    if n != g.n() {
        return Err(ValidationFailure(format!(
            "decomposition is for {n} vertices, graph has {}",
            g.n()
        ))
        .into());
    }
    Ok(td)
}

/// Recomputes the deleted weight and chordality of the remainder.
fn verify(g: &WeightedGraph, del: &VertexSet, expected: u64) -> anyhow::Result<()> {
    let w = g.set_weight_sum(del)?;
    if w != expected {
        bail!(InternalFailure(format!("deletion set weighs {w}, reported {expected}")));
    }
    if !is_chordal(&g.remove_vertices(del).0) {
        bail!(InternalFailure("graph minus the deletion set is not chordal".into()));
    }
    Ok(())
}

fn report(out: &mut dyn Write, weight: u64, del: &VertexSet) -> anyhow::Result<()> {
    writeln!(out, "deletion_weight {weight}")?;
    for v in del.iter() {
        writeln!(out, "{}", v + 1)?;
    }
    writeln!(out, "VERIFIED")?;
    Ok(())
}

fn solve_graph(
    g: &WeightedGraph,
    td: Option<TreeDecomposition>,
    err: &mut dyn Write,
) -> anyhow::Result<dp::Solution> {
    let td = match td {
        Some(td) => td,
        None => {
            let td = treedec::min_fill_decomposition(g);
            writeln!(
                err,
                "warning: no decomposition given, using min-fill of width {}",
                td.width()
            )?;
            td
        }
    };
    if let Err(v) = treedec::validate(&td, g) {
        bail!(ValidationFailure(format!("invalid decomposition: {v}")));
    }
    let nd = treedec::make_nice(&td, g)?;
    let run = dp::solve_with(g, &nd, &SolveOptions::default())?;
    let stats = &run.solution.stats;
    if stats.condense_bound_violations + stats.size_invariant_violations > 0 {
        bail!(InternalFailure(format!("state bound violated: {stats:?}")));
    }
    log::info!("solved: {stats:?}");
    Ok(run.solution)
}

fn write_output(
    out: &mut dyn Write,
    path: Option<&Path>,
    graph_text: &str,
    extra: &[String],
    labels: Option<&gadgets::GadgetLabels>,
) -> anyhow::Result<()> {
    match path {
        Some(p) => {
            let mut text = String::new();
            for line in extra {
                text.push_str(&format!("c {line}\n"));
            }
            text.push_str(graph_text);
            fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
            if let Some(l) = labels {
                let lp = PathBuf::from(format!("{}.labels", p.display()));
                fs::write(&lp, io::write_labels(l))
                    .with_context(|| format!("writing {}", lp.display()))?;
            }
            writeln!(out, "wrote {}", p.display())?;
        }
        None => {
            for line in extra {
                writeln!(out, "c {line}")?;
            }
            out.write_all(graph_text.as_bytes())?;
            if let Some(l) = labels {
                for line in io::write_labels(l).lines() {
                    writeln!(out, "c {line}")?;
                }
            }
        }
    }
    Ok(())
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<()> {
    match cmd {
        Command::Solve { graph, td } => {
            let g = load_graph(&graph)?;
            let td = td.map(|p| load_td(&p, &g)).transpose()?;
            let sol = solve_graph(&g, td, err)?;
            verify(&g, &sol.deletion_set, sol.deletion_weight)?;
            report(out, sol.deletion_weight, &sol.deletion_set)
        }
        Command::Oracle { graph } => {
            let g = load_graph(&graph)?;
            let (w, del) = oracle::brute_force_chvd(&g)?;
            verify(&g, &del, w)?;
            report(out, w, &del)
        }
        Command::Cross {
            graph,
            random,
            n,
            p,
            seed,
            wmin,
            wmax,
        } => {
            let graphs: Vec<(String, WeightedGraph)> = match (graph, random) {
                (Some(path), _) => vec![(path.display().to_string(), load_graph(&path)?)],
                (None, Some(count)) => {
                    if wmin > wmax || !(0.0..=1.0).contains(&p) {
                        bail!(ValidationFailure("need wmin <= wmax and 0 <= p <= 1".into()));
                    }
                    (0..count as u64)
                        .map(|i| {
                            let spec = RandomSpec {
                                n,
                                p,
                                weight_lo: wmin,
                                weight_hi: wmax,
                                seed: seed + i,
                            };
                            (format!("seed {}", seed + i), oracle::random_instance(&spec))
                        })
                        .collect()
                }
                (None, None) => bail!(ValidationFailure("give a graph file or --random N".into())),
            };
            let mut sink = Vec::new();
            for (name, g) in &graphs {
                let sol = solve_graph(g, None, &mut sink)?;
                let (w, _) = oracle::brute_force_chvd(g)?;
                if w != sol.deletion_weight {
                    bail!(InternalFailure(format!(
                        "{name}: solver {} vs oracle {w}",
                        sol.deletion_weight
                    )));
                }
                verify(g, &sol.deletion_set, sol.deletion_weight)?;
                writeln!(out, "{name} deletion_weight {w}")?;
            }
            writeln!(out, "agree {}", graphs.len())?;
            Ok(())
        }
        Command::Gen(gen) => run_gen(gen, out),
        Command::CheckTd { graph, td } => {
            let g = load_graph(&graph)?;
            let td = load_td(&td, &g)?;
            match treedec::validate(&td, &g) {
                Ok(()) => {
                    writeln!(out, "valid width {}", td.width())?;
                    Ok(())
                }
                Err(v) => Err(ValidationFailure(format!("invalid: {v}")).into()),
            }
        }
        Command::Selftest { seed, count } => selftest(seed, count, out),
    }
}

fn run_gen(gen: Gen, out: &mut dyn Write) -> anyhow::Result<()> {
    match gen {
        Gen::PermClique {
            k,
            seed,
            p,
            k_cap,
            out: path,
        } => {
            if !(0.0..=1.0).contains(&p) {
                bail!(ValidationFailure("p must lie in [0, 1]".into()));
            }
            if k < 2 || k > k_cap {
                bail!(ValidationFailure(format!("k must lie in 2..={k_cap}")));
            }
            let (inst, pi) = gadgets::PermutationCliqueInstance::random_with_clique(k, p, seed);
            let red = match gadgets::reduce_permutation_clique_with_cap(&inst, k_cap)? {
                ReductionOutcome::Instance(r) => r,
                ReductionOutcome::TriviallyNo { i, j } => {
                    return Err(anyhow!("no tuple survives for rows ({i}, {j})"));
                }
            };
            let pi_text: Vec<String> = pi.iter().map(|x| x.to_string()).collect();
            let extra = vec![
                format!("budget {}", red.budget),
                format!("planted permutation {}", pi_text.join(" ")),
            ];
            write_output(out, path.as_deref(), &io::write_graph(&red.graph), &extra, Some(&red.labels))
        }
        Gen::Choice { s, out: path } => {
            let cg = gadgets::choice_gadget(s)?;
            let extra = vec![format!("minimum interval deletion {}", 10 * s)];
            write_output(out, path.as_deref(), &io::write_graph(&cg.graph), &extra, Some(&cg.labels()))
        }
        Gen::FvsSubdivision { graph, out: path } => {
            let g = load_graph(&graph)?;
            let h = subdivide_all_edges(&g)?;
            write_output(out, path.as_deref(), &io::write_graph(&h), &[], None)
        }
    }
}

fn selftest(seed: u64, count: usize, out: &mut dyn Write) -> anyhow::Result<()> {
    let mut failures = 0;
    let mut line = |out: &mut dyn Write, name: &str, ok: bool, detail: String| -> anyhow::Result<()> {
        if !ok {
            failures += 1;
        }
        writeln!(out, "{} {name} {detail}", if ok { "ok" } else { "FAIL" })?;
        Ok(())
    };

    let mut agree = 0;
    for i in 0..count as u64 {
        let spec = RandomSpec {
            n: 6 + (i % 5) as usize,
            p: [0.2, 0.4, 0.6][(i % 3) as usize],
            weight_lo: 1,
            weight_hi: 9,
            seed: seed + i,
        };
        let g = oracle::random_instance(&spec);
        let nd = treedec::make_nice(&treedec::min_fill_decomposition(&g), &g)?;
        let sol = dp::solve(&g, &nd)?;
        if oracle::brute_force_chvd(&g)?.0 == sol.deletion_weight {
            agree += 1;
        }
    }
    line(out, "solver-vs-oracle", agree == count, format!("{agree}/{count}"))?;

    let mut clean = 0;
    let checked = count.min(10);
    for i in 0..checked as u64 {
        let g = oracle::random_instance(&RandomSpec::unit(8, 0.4, seed + i));
        let nd = treedec::make_nice(&treedec::min_fill_decomposition(&g), &g)?;
        let run = dp::solve_with(&g, &nd, &SolveOptions { keep_states: true })?;
        let all_ok = (0..nd.nodes.len()).all(|t| {
            dp::verify_invariants(&g, &run, t, &run.states[t])
                .map(|r| r.is_ok())
                .unwrap_or(false)
        });
        if all_ok {
            clean += 1;
        }
    }
    line(out, "state-invariants", clean == checked, format!("{clean}/{checked}"))?;

    let m = GraphicMatroid::from_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])?;
    let mut r = oracle::rng(seed);
    let mut rep_ok = 0;
    for _ in 0..count {
        let mut fam = Vec::new();
        for payload in 0..8 {
            let edges = rand::RngCore::next_u64(&mut r) as u128 & 0b11_1111;
            if m.is_independent(edges) {
                let weight = rand::RngCore::next_u64(&mut r) % 10;
                fam.push(FamilyEntry { edges, weight, payload });
            }
        }
        let rep = max_representative(&m, &fam)?;
        if rep.len() <= 1 << m.rank && representative_oracle_check(&m, &fam, &rep) {
            rep_ok += 1;
        }
    }
    line(out, "representative-families", rep_ok == count, format!("{rep_ok}/{count}"))?;

    let cg = gadgets::choice_gadget(2)?;
    let gadget_ok = (1..=2).all(|i| {
        cg.canonical_solution(i)
            .map(|x| x.len() == 20 && gadgets::is_interval_deletion_set(&cg.graph, &x))
            .unwrap_or(false)
    }) && gadgets::lower_bound_audit(&cg).bound == 20;
    line(out, "choice-gadget", gadget_ok, "s=2".into())?;

    if failures > 0 {
        bail!(InternalFailure(format!("{failures} selftest suite(s) failed")));
    }
    Ok(())
}

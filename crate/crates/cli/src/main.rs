use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use arcforge_core::arc::{enumerate_arc_classes, ArcRecord};
use arcforge_core::classify::{classify, CatalogEntry};
use arcforge_core::cut::cut_along;
use arcforge_core::formulas::formula_checks;
use arcforge_core::intersection::{path_intersection, self_intersection, ArcPath};
use arcforge_core::render::render_svg;
use arcforge_core::system::{
    maximum_cliques, non_intersecting_subset, ArcPool, ArcSystem, CompatibilityGraph, SystemRecord,
};
use arcforge_core::triangulation::{standard_fixture, IdealTriangulation};
use arcforge_core::verify::{run_verify, Survey, DEFAULT_BOUND};
use arcforge_core::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

/// Golden catalog of maximal 1-systems on the twice-marked torus.
const CATALOG: &str = include_str!("../data/catalog-torus-2-marked.json");

#[derive(Parser)]
#[command(name = "arcforge", version, about = "Arc systems on marked surfaces")]
struct Cli {
    /// Worker threads; output does not depend on it.
    #[arg(long, global = true, env = "ARCFORGE_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every simple essential arc up to a crossing bound.
    EnumerateArcs {
        #[arg(long, default_value = "torus-2-marked")]
        surface: String,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// Pairwise and self intersection numbers of a list of arcs.
    Intersect {
        /// JSON array of arcs, or a system
        #[arg(long)]
        arcs: PathBuf,
    },
    /// Largest k-systems in the bounded arc pool.
    MaxSystems {
        #[arg(long, default_value = "torus-2-marked")]
        surface: String,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
        k: u8,
        /// Report maximal systems with at least this many arcs instead of
        /// only the largest ones.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        floor: Option<u64>,
        /// Print at most this many systems.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Cut the surface along disjoint members of a system.
    Cut {
        #[arg(long)]
        system: PathBuf,
        /// `J` for the members disjoint from all others, `all`, or a
        /// comma-separated list of member positions
        #[arg(long, default_value = "J")]
        subset: String,
    },
    /// Group systems into homeomorphism classes and print the catalog.
    Classify {
        /// JSON array of systems; when absent the maximal 1-systems of the
        /// bounded pool are classified
        #[arg(long)]
        systems: Option<PathBuf>,
        #[arg(long, default_value = "torus-2-marked")]
        surface: String,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// Print the shipped catalog, or check it against a fresh computation.
    Catalog {
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// Draw a system as SVG.
    Render {
        #[arg(long)]
        system: PathBuf,
        /// Output file; standard output when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite and print a pass/fail table.
    Verify {
        /// `formulas` checks only the closed-form formulas
        #[arg(value_enum)]
        suite: Option<Suite>,
        #[arg(long, default_value = "torus-2-marked")]
        surface: String,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        /// Print the report as JSON
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Formulas,
}

/// Exit status 1 marks a failed check, 2 bad input.
enum Failure {
    Check(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Layout(_) | Error::NotFilling(_) => Failure::Check(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn print_json(value: &impl serde::Serialize) -> Outcome {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Check(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn load_system(path: &Path) -> Result<(IdealTriangulation, ArcSystem), Failure> {
    let record: SystemRecord = parse(path)?;
    let t = standard_fixture(&record.surface)?;
    let system = record.resolve(&t)?;
    Ok((t, system))
}

fn enumerate(surface: &str, bound: usize) -> Outcome {
    let t = standard_fixture(surface)?;
    let arcs: Vec<ArcRecord> = enumerate_arc_classes(&t, bound).iter().map(|a| ArcRecord::from_arc(&t, a)).collect();
    print_json(&arcs)
}

fn intersect(path: &Path) -> Outcome {
    let text = read(path)?;
    let records: Vec<ArcRecord> = match serde_json::from_str::<SystemRecord>(&text) {
        Ok(s) => s.members,
        Err(_) => serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
    };
    let Some(first) = records.first() else {
        return print_json(&json!({ "matrix": [], "self": [] }));
    };
    let t = standard_fixture(&first.surface)?;
    let arcs = records.iter().map(|r| r.resolve(&t)).collect::<Result<Vec<_>, _>>()?;
    let paths: Vec<ArcPath> = arcs.iter().map(|a| ArcPath::new(&t, a)).collect();
    let matrix: Vec<Vec<usize>> = (0..paths.len())
        .map(|i| {
            (0..paths.len())
                .map(|j| if arcs[i] == arcs[j] { 0 } else { path_intersection(&paths[i], &paths[j]) })
                .collect()
        })
        .collect();
    let selfs: Vec<usize> = paths.iter().map(self_intersection).collect();
    print_json(&json!({ "matrix": matrix, "self": selfs }))
}

fn max_systems(surface: &str, bound: usize, k: u8, floor: Option<u64>, limit: Option<usize>) -> Outcome {
    let t = standard_fixture(surface)?;
    let pool = ArcPool::new(&t, bound);
    let g = CompatibilityGraph::new(&pool, k as usize);
    let max = g.clique_number();
    let cliques: Vec<Vec<usize>> = match floor {
        Some(f) => maximum_cliques(&g, f as usize),
        None => maximum_cliques(&g, max.max(1)).into_iter().filter(|c| c.len() == max).collect(),
    };
    let count = cliques.len();
    let systems: Vec<SystemRecord> = cliques
        .iter()
        .take(limit.unwrap_or(usize::MAX))
        .map(|c| ArcSystem::from_pool(&pool, t.name(), c, k as usize).record(&t))
        .collect();
    print_json(&json!({
        "surface": t.name(),
        "bound": bound,
        "k": k,
        "pool": pool.len(),
        "max_size": max,
        "count": count,
        "systems": systems,
    }))
}

fn cut(path: &Path, subset: &str) -> Outcome {
    let (t, system) = load_system(path)?;
    let chosen = match subset {
        "J" => non_intersecting_subset(&system),
        "all" => system.clone(),
        list => {
            let idx = list
                .split(',')
                .map(|s| s.trim().parse::<usize>().ok().filter(|&i| i < system.len()))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Failure::Input(format!("bad subset `{list}`")))?;
            system.subsystem(&idx)
        }
    };
    let result = cut_along(&t, chosen.members())?;
    print_json(&result.report())
}

fn classify_cmd(systems: Option<&Path>, surface: &str, bound: usize) -> Outcome {
    let (t, classes) = match systems {
        Some(path) => {
            let records: Vec<SystemRecord> = parse(path)?;
            let name = records.first().map_or(surface.to_string(), |r| r.surface.clone());
            let t = standard_fixture(&name)?;
            let list = records.iter().map(|r| r.resolve(&t)).collect::<Result<Vec<_>, _>>()?;
            let classes = classify(&t, &list)?;
            (t, classes)
        }
        None => {
            let t = standard_fixture(surface)?;
            let classes = Survey::new(&t, bound).classes?;
            (t, classes)
        }
    };
    print_json(&classes.catalog(&t))
}

fn catalog(check: bool, bound: usize) -> Outcome {
    if !check {
        print!("{CATALOG}");
        return Ok(());
    }
    let shipped: Vec<CatalogEntry> = serde_json::from_str(CATALOG).map_err(|e| Failure::Check(e.to_string()))?;
    let t = standard_fixture("torus-2-marked")?;
    let fresh = Survey::new(&t, bound).catalog(&t)?;
    let shipped_codes: Vec<&str> = shipped.iter().map(|e| e.code.as_str()).collect();
    let fresh_codes: Vec<&str> = fresh.iter().map(|e| e.code.as_str()).collect();
    if shipped_codes == fresh_codes {
        println!("catalog matches: {} classes at bound {bound}", fresh.len());
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "catalog differs at bound {bound}: {} shipped classes, {} computed",
            shipped.len(),
            fresh.len()
        )))
    }
}

fn render(path: &Path, out: Option<&Path>) -> Outcome {
    let (t, system) = load_system(path)?;
    let svg = render_svg(&t, system.members())?;
    match out {
        Some(o) => fs::write(o, svg).map_err(|e| Failure::Input(format!("{}: {e}", o.display()))),
        None => {
            print!("{svg}");
            Ok(())
        }
    }
}

fn verify(surface: &str, bound: usize, as_json: bool) -> Outcome {
    let report = run_verify(surface, bound)?;
    if as_json {
        print_json(&report)?;
    } else {
        print!("{}", report.to_text());
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check(String::new()))
    }
}

fn verify_formulas(as_json: bool) -> Outcome {
    let checks = formula_checks();
    if as_json {
        print_json(&checks)?;
    } else {
        for c in &checks {
            let actual = c.actual.map_or_else(|| "error".to_string(), |v| v.to_string());
            let verdict = if c.passed() { "PASS" } else { "FAIL" };
            println!("{verdict}  {:<24} expected {:>3}  got {actual}", c.name, c.expected);
        }
        let passed = checks.iter().filter(|c| c.passed()).count();
        println!("{passed}/{} formula checks passed", checks.len());
    }
    if checks.iter().all(|c| c.passed()) {
        Ok(())
    } else {
        Err(Failure::Check(String::new()))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::EnumerateArcs { surface, bound } => enumerate(&surface, bound),
        Command::Intersect { arcs } => intersect(&arcs),
        Command::MaxSystems { surface, bound, k, floor, limit } => max_systems(&surface, bound, k, floor, limit),
        Command::Cut { system, subset } => cut(&system, &subset),
        Command::Classify { systems, surface, bound } => classify_cmd(systems.as_deref(), &surface, bound),
        Command::Catalog { check, bound } => catalog(check, bound),
        Command::Render { system, out } => render(&system, out.as_deref()),
        Command::Verify { suite: Some(Suite::Formulas), json, .. } => verify_formulas(json),
        Command::Verify { suite: None, surface, bound, json } => verify(&surface, bound, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("arcforge: cannot start {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            if !msg.is_empty() {
                eprintln!("arcforge: {msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("arcforge: {msg}");
            ExitCode::from(2)
        }
    }
}

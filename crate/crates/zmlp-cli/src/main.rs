use clap::{Parser, Subcommand};
use zmlp_cli::commands::{self, Report};
use zmlp_cli::par::worker_count;

/// Zero mutable Laurent polynomials on lattice polygons: enumeration,
/// classification, mutation certificates, and the attached toric data.
#[derive(Parser)]
#[command(name = "zmlp", version, about)]
struct Cli {
    /// Worker threads for the scanning subcommands (ZMLP_JOBS overrides)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate the dual partition pairs on a rectangular triangle
    Enum {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate pairs and name their families (Tom, Jerry, Spike, Tyke)
    Classify {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        json: bool,
    },
    /// Search for a mutation certificate taking a polynomial to 1
    Verify {
        /// Path to a polynomial JSON file
        #[arg(long)]
        poly: String,
        /// Maximum chain length
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// Maximum search states to expand
        #[arg(long, default_value_t = 20000)]
        nodes: usize,
        #[arg(long)]
        json: bool,
    },
    /// Build the mutation graph reachable from 1 within a size budget
    Graph {
        /// Bound the bounding-square side of every polygon
        #[arg(long)]
        max_size: Option<u32>,
        /// Bound the lattice point count instead
        #[arg(long)]
        max_points: Option<usize>,
        /// Also seed products of reached classes
        #[arg(long)]
        include_products: bool,
        /// Write the graph in DOT format to this path
        #[arg(long)]
        dot: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Print the family classification table and check the built-in copy
    Table1 {
        /// Table parameter(s); defaults to every built-in value
        #[arg(long = "k")]
        ks: Vec<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Print stabilized pair counts for thin triangles and check them
    Table2 {
        #[arg(long, default_value_t = 7)]
        a_max: u64,
        #[arg(long, default_value_t = 4)]
        k_max: u64,
        /// Scan b up to a + this bound on the left table
        #[arg(long, default_value_t = 50)]
        scan: u64,
        /// Scan a up to this bound on the right table
        #[arg(long, default_value_t = 40)]
        right_scan: u64,
        #[arg(long)]
        json: bool,
    },
    /// Reduce and replay every pair with a + b below a limit
    VerifySmall {
        #[arg(long, default_value_t = 11)]
        limit: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print the cone over a triangle, its dual, and the component types
    Toric {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        json: bool,
    },
    /// Classify the cyclic quotient singularity of a three-ray cone
    Sing {
        /// Cone as semicolon-separated integer triples, e.g. "1,0,0;0,1,0;1,-3,2"
        #[arg(long)]
        cone: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the wall functions attached to the edges of a polynomial
    Walls {
        /// Path to a polynomial JSON file
        #[arg(long)]
        poly: String,
        /// Keep the parameters symbolic instead of pinning sample values
        #[arg(long)]
        distinct: bool,
        #[arg(long)]
        json: bool,
    },
    /// Reduce a dual pair to a proved extraction base configuration
    Extract {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        /// Pair as "<a-part>|<b-part>", e.g. "2,1|3,1,1"
        #[arg(long)]
        pair: String,
        #[arg(long)]
        json: bool,
    },
    /// Print divisibility and required divisibility tuples per edge
    Div {
        /// Path to a polynomial JSON file
        #[arg(long)]
        poly: String,
        #[arg(long)]
        json: bool,
    },
}

fn run(cli: Cli) -> anyhow::Result<Report> {
    let jobs = worker_count(cli.jobs);
    match cli.cmd {
        Cmd::Enum { a, b, json } => commands::cmd_enum(a, b, json),
        Cmd::Classify { a, b, json } => commands::cmd_classify(a, b, json),
        Cmd::Verify { poly, depth, nodes, json } => {
            commands::cmd_verify(&poly, depth, nodes, json)
        }
        Cmd::Graph { max_size, max_points, include_products, dot, json } => {
            commands::cmd_graph(max_size, max_points, include_products, dot.as_deref(), json)
        }
        Cmd::Table1 { ks, json } => commands::cmd_table1(&ks, json),
        Cmd::Table2 { a_max, k_max, scan, right_scan, json } => {
            commands::cmd_table2(a_max, k_max, scan, right_scan, jobs, json)
        }
        Cmd::VerifySmall { limit, json } => commands::cmd_verify_small(limit, jobs, json),
        Cmd::Toric { a, b, json } => commands::cmd_toric(a, b, json),
        Cmd::Sing { cone, json } => commands::cmd_sing(&cone, json),
        Cmd::Walls { poly, distinct, json } => commands::cmd_walls(&poly, distinct, json),
        Cmd::Extract { a, b, pair, json } => commands::cmd_extract(a, b, &pair, json),
        Cmd::Div { poly, json } => commands::cmd_div(&poly, json),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            print!("{}", report.text);
            if !report.text.ends_with('\n') {
                println!();
            }
            if !report.passed {
                std::process::exit(1);
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}

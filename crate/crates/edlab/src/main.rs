//! `edlab`: ED degrees, defects, critical points, and ED polynomials from
//! the command line. Every subcommand prints a JSON report with a stable
//! envelope (tool version, input digest, seed), so identical invocations
//! produce identical bytes.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use edlab::critpoints::{
    critical_matrices, critical_symmetric, verify_morse_inequalities, CritConfig,
};
use edlab::edpoly::ed_polynomial_rnc;
use edlab::exactmath::format_rat;
use edlab::formulas::{
    degree_report, emit_table_segre_binary, emit_table_segre_matrices, TensorFormat,
};
use edlab::pencils::quadric_ed_degree;
use edlab::report::{
    self, canonical_bytes, digest, envelope, matrix_value, parse_exact_symmat,
    parse_exact_vector, parse_f64_matrix, parse_symmat_auto, read_json,
};
use edlab::rnc::rnc_ed_degree;
use edlab::verify::{run as run_verify, Scope};

#[derive(Parser)]
#[command(
    name = "edlab",
    version,
    about = "Euclidean distance degrees of rank-one varieties, quadrics, and rational normal curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Csv,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// Degree report for a Segre-Veronese format: generic and Frobenius ED
    /// degrees, Chern and polar degrees, dual degree.
    Gedeg {
        /// Comma-separated degrees d_1,...,d_k
        #[arg(long, value_delimiter = ',')]
        d: Vec<u32>,
        /// Comma-separated dimensions n_1,...,n_k
        #[arg(long, value_delimiter = ',')]
        n: Vec<u32>,
    },
    /// Reference tables of ED degrees (binary Segre varieties and rank-one
    /// matrix varieties).
    Tables {
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
    /// ED degree and defect of a smooth quadric under an inner product, from
    /// the pencil normal form.
    Quadric {
        /// JSON file with the quadric Gram matrix (or an object with "F")
        #[arg(long)]
        f: String,
        /// JSON file with the inner-product Gram matrix (or an object with "Q")
        #[arg(long)]
        q: String,
    },
    /// ED defect and degree of the rational normal curve of degree d under
    /// an exact symmetric form.
    Rnc {
        #[arg(long)]
        d: u32,
        /// JSON file with the exact (d+1)x(d+1) Gram matrix
        #[arg(long)]
        q: String,
    },
    /// Real critical rank-one approximations with Morse census.
    Critpoints(CritArgs),
    /// Elimination-based ED polynomial of a rational normal curve at exact
    /// rational data.
    Edpoly {
        #[arg(long)]
        d: u32,
        /// JSON file with the exact data vector of length d+1
        #[arg(long)]
        u: String,
        /// JSON file with the exact Gram matrix
        #[arg(long)]
        q: String,
    },
    /// Run the reproduction suite (exit 0 iff everything passes).
    Verify {
        /// all | formulas | pencils | rnc | critpoints | edpoly
        #[arg(default_value = "all")]
        scope: String,
    },
}

#[derive(Args)]
struct CritArgs {
    #[command(subcommand)]
    mode: CritMode,
}

#[derive(Subcommand)]
enum CritMode {
    /// Data is a full matrix; the Gram matrix lives on the tensor space in
    /// the lexicographic rank-one basis.
    Matrix(CritCommon),
    /// Data is a symmetric matrix; the Gram matrix lives on the symmetric
    /// square in the monomial basis.
    Symmetric(CritCommon),
}

#[derive(Args)]
struct CritCommon {
    /// JSON file with the data matrix (row-major, numbers)
    #[arg(long)]
    u: String,
    /// JSON file with the Gram matrix of the inner product
    #[arg(long)]
    q: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of multistart samples (0 = automatic)
    #[arg(long, default_value_t = 0)]
    starts: usize,
}

fn main() {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32, String> {
    match cmd {
        Command::Gedeg { d, n } => {
            let fmt = TensorFormat::new(d.clone(), n.clone())
                .map_err(|e| format!("{e}; example: edlab gedeg --d 1,1 --n 1,1"))?;
            let rep = degree_report(&fmt);
            let payload = json!({
                "d": d,
                "n": n,
                "ambient_dim": fmt.ambient_dim().to_string(),
                "generic_ed_degree": rep.generic_ed_degree.to_string(),
                "frobenius_ed_degree": rep.frobenius_ed_degree.to_string(),
                "chern_degrees": report::bigint_vec_json(&rep.chern_degrees),
                "polar_degrees": report::bigint_vec_json(&rep.polar_degrees),
                "dual_degree": rep.dual_degree.map(|v| v.to_string()),
            });
            let dg = digest(format!("gedeg:{d:?}:{n:?}").as_bytes());
            print_json(&envelope(&dg, 0, payload));
            Ok(0)
        }
        Command::Tables { format } => {
            let t1 = emit_table_segre_binary();
            let t2 = emit_table_segre_matrices();
            match format {
                TableFormat::Csv => {
                    print!("{}", t1.to_csv());
                    println!();
                    print!("{}", t2.to_csv());
                }
                TableFormat::Markdown => {
                    print!("{}", t1.to_markdown());
                    println!();
                    print!("{}", t2.to_markdown());
                }
            }
            Ok(0)
        }
        Command::Quadric { f, q } => {
            let fv = read_json(&f).map_err(|e| e.to_string())?;
            let qv = read_json(&q).map_err(|e| e.to_string())?;
            let fm = parse_symmat_auto(matrix_value(&fv, "F").map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let qm = parse_symmat_auto(matrix_value(&qv, "Q").map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let a = quadric_ed_degree(&fm, &qm).map_err(|e| e.to_string())?;
            let payload = json!({
                "ed_degree": a.ed_degree,
                "ed_defect": a.ed_defect,
                "distinct_eigenvalues": a.distinct_eigenvalues,
                "segre_symbol": a.segre_symbol.to_string(),
                "eigenvalues": a.eigenvalues,
                "signature_f": { "positive": a.signature_f.0, "negative": a.signature_f.1 },
                "exact_multiplicities": a.exact,
            });
            let mut bytes = canonical_bytes(&fv);
            bytes.extend(canonical_bytes(&qv));
            print_json(&envelope(&digest(&bytes), 0, payload));
            Ok(0)
        }
        Command::Rnc { d, q } => {
            let qv = read_json(&q).map_err(|e| e.to_string())?;
            let qm = parse_exact_symmat(matrix_value(&qv, "Q").map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let r = rnc_ed_degree(&qm, d).map_err(|e| e.to_string())?;
            let payload = serde_json::to_value(&r).map_err(|e| e.to_string())?;
            let mut bytes = canonical_bytes(&qv);
            bytes.extend(d.to_le_bytes());
            print_json(&envelope(&digest(&bytes), 0, payload));
            Ok(0)
        }
        Command::Critpoints(args) => {
            let (common, symmetric) = match args.mode {
                CritMode::Matrix(c) => (c, false),
                CritMode::Symmetric(c) => (c, true),
            };
            let uv = read_json(&common.u).map_err(|e| e.to_string())?;
            let qv = read_json(&common.q).map_err(|e| e.to_string())?;
            let u = parse_f64_matrix(matrix_value(&uv, "U").map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let gram = parse_symmat_auto(matrix_value(&qv, "Q").map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let cfg = CritConfig {
                seed: common.seed,
                starts: common.starts,
                ..CritConfig::default()
            };
            let (set, census) = if symmetric {
                critical_symmetric(&u, &gram, &cfg)?
            } else {
                critical_matrices(&u, &gram, &cfg)?
            };
            let dims = if symmetric {
                None
            } else {
                Some((u.len() - 1, u[0].len() - 1))
            };
            let checks = verify_morse_inequalities(&census, dims);
            let payload = json!({
                "points": set.points,
                "non_generic": set.non_generic,
                "warnings": set.warnings,
                "census": census,
                "checks": { "passed": checks.passed, "lines": checks.lines },
            });
            let mut bytes = canonical_bytes(&uv);
            bytes.extend(canonical_bytes(&qv));
            bytes.extend(common.seed.to_le_bytes());
            print_json(&envelope(&digest(&bytes), common.seed, payload));
            Ok(0)
        }
        Command::Edpoly { d, u, q } => {
            let uv = read_json(&u).map_err(|e| e.to_string())?;
            let qv = read_json(&q).map_err(|e| e.to_string())?;
            let uu = parse_exact_vector(matrix_value(&uv, "U").map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let qm = parse_exact_symmat(matrix_value(&qv, "Q").map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let p = ed_polynomial_rnc(&uu, &qm, d).map_err(|e| e.to_string())?;
            let payload = json!({
                "degree": p.degree,
                "coefficients": p.coefficient_strings(),
                "removed_factors": [format_rat(&p.removed_content)],
                "infinity_value": p.infinity_value.as_ref().map(format_rat),
            });
            let mut bytes = canonical_bytes(&uv);
            bytes.extend(canonical_bytes(&qv));
            bytes.extend(d.to_le_bytes());
            print_json(&envelope(&digest(&bytes), 0, payload));
            Ok(0)
        }
        Command::Verify { scope } => {
            let scope: Scope = scope.parse()?;
            let results = run_verify(scope);
            let mut failed = Vec::new();
            for r in &results {
                println!(
                    "{} {:<26} {:>8} ms  {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.anchor,
                    r.millis,
                    r.detail
                );
                if !r.passed {
                    failed.push(r.anchor);
                }
            }
            if failed.is_empty() {
                println!("verify: all {} checks passed", results.len());
                Ok(0)
            } else {
                println!("verify: FAILED at {}", failed.join(", "));
                Ok(1)
            }
        }
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable report"));
}

//! Command-line front end. Every command produces a JSON report
//! `{command, result, meta}`; `--format text` prints a short summary instead.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or budget error.

mod acceptance;
mod config;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use acceptance::{run_all, run_criterion, CriterionResult, CRITERIA, KNOWN_FAILURES};
pub use config::{OutputFormat, RunConfig};

use crate::combinat::SubsetIndex;
use crate::complexes::{orientation, orientation_binomial, verify, SimplicialComplex};
use crate::designs::{all_pods, is_null_design, min_support_scan, pod_expand, NullDesign, ScanMode};
use crate::error::{Error, Result};
use crate::exactmath::{gcd_maximal_minors, rank_mod_p, rank_q};
use crate::incidence::{build_matrix, build_matrix_allow_identity, check_rank_theorems};
use crate::polytope::{is_face, lattice_index, neighborliness, placing_triangulation_capped, simplex_volumes, PointConfig, VolumeLattice};
use crate::threepoint::{check_fibers, check_section5, det_as_c_expression, tilde_ideal_generators};
use crate::toric::{graver_basis, minimal_markov, octahedral_generators, saturation_equals, ToricMatrix};

#[derive(Parser, Debug)]
#[command(name = "inctor", version, about = "Exact computations with incidence toric ideals")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalArgs {
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: OutputFormat,
    /// Drop the version, timing and timestamp block from JSON output.
    #[arg(long, global = true)]
    pub no_meta: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Buchberger pair-queue cap.
    #[arg(long, global = true)]
    pub pair_budget: Option<u64>,
    /// Lattice points a box enumeration may visit.
    #[arg(long, global = true)]
    pub box_budget: Option<u64>,
    /// Points a fiber enumeration may visit.
    #[arg(long, global = true)]
    pub fiber_budget: Option<u64>,
    /// Minors a gcd-of-minors computation may enumerate.
    #[arg(long, global = true)]
    pub minor_budget: Option<u64>,
    /// Simplices a triangulation may contain.
    #[arg(long, global = true)]
    pub simplex_budget: Option<u64>,
    /// Face LPs a neighborliness scan may solve.
    #[arg(long, global = true)]
    pub lp_budget: Option<u64>,
    /// Candidate vectors a support scan may enumerate.
    #[arg(long, global = true)]
    pub scan_budget: Option<u64>,
    /// Largest n for derangement enumeration.
    #[arg(long, global = true)]
    pub max_derangement_n: Option<usize>,
    /// Largest n for Leibniz expansions.
    #[arg(long, global = true)]
    pub max_det_n: Option<usize>,
}

impl GlobalArgs {
    pub fn config(&self) -> RunConfig {
        let mut c = RunConfig::default();
        let set = |slot: &mut u64, v: Option<u64>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut c.toric.pair_queue, self.pair_budget);
        set(&mut c.toric.box_points, self.box_budget);
        set(&mut c.toric.fiber_points, self.fiber_budget);
        set(&mut c.minor_sample, self.minor_budget);
        set(&mut c.volume_simplices, self.simplex_budget);
        set(&mut c.face_lps, self.lp_budget);
        set(&mut c.support_scan, self.scan_budget);
        c.max_derangement_n = self.max_derangement_n.unwrap_or(c.max_derangement_n);
        c.max_det_n = self.max_det_n.unwrap_or(c.max_det_n);
        c.format = self.format;
        c.workers = self.workers;
        c
    }
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Nkt {
    #[arg(short)]
    pub n: usize,
    #[arg(short)]
    pub k: usize,
    #[arg(short)]
    pub t: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Incidence matrices and their ranks.
    #[command(subcommand)]
    Incidence(IncidenceCmd),
    /// Generating sets of the incidence toric ideal.
    #[command(subcommand)]
    Toric(ToricCmd),
    /// Volumes and faces of the incidence polytope.
    #[command(subcommand)]
    Polytope(PolytopeCmd),
    /// Certificates for simplicial complexes read from facet files.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Derangement monomials and the triangle lattice.
    #[command(subcommand)]
    Threepoint(ThreepointCmd),
    /// Null designs and pods.
    #[command(subcommand)]
    Designs(DesignsCmd),
    /// Run the acceptance suite.
    Acceptance {
        #[arg(long, conflicts_with = "criterion")]
        all: bool,
        #[arg(long)]
        criterion: Vec<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum IncidenceCmd {
    /// The containment matrix of t-subsets in k-subsets.
    Matrix {
        #[command(flatten)]
        nkt: Nkt,
        /// Accept t = k (the identity matrix).
        #[arg(long)]
        allow_identity: bool,
    },
    /// Ranks over Q and F_p, optionally with the gcd of maximal minors.
    Rank {
        #[command(flatten)]
        nkt: Nkt,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7,11,13")]
        primes: Vec<u64>,
        #[arg(long)]
        minors: bool,
    },
    /// The rank laws for every 1 <= t < k <= n <= N.
    Theorems {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7,11,13")]
        primes: Vec<u64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ToricCmd {
    /// Minimal Markov basis.
    Markov(Nkt),
    /// All primitive binomials.
    Graver(Nkt),
    /// The quartics coming from octahedra.
    Octahedral(Nkt),
    /// Whether the octahedral quartics saturate to the toric ideal.
    Saturate(Nkt),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum LatticeArg {
    Euclidean,
    Column,
}

#[derive(Subcommand, Debug)]
pub enum PolytopeCmd {
    /// Normalized volume via a placing triangulation.
    Volume {
        #[command(flatten)]
        nkt: Nkt,
        #[arg(long, value_enum, default_value = "column")]
        lattice: LatticeArg,
    },
    /// Face test for vertex subsets, given as comma-separated k-subset
    /// labels; defaults to the positive supports of all pods.
    Faces {
        #[command(flatten)]
        nkt: Nkt,
        #[arg(long)]
        subset: Vec<String>,
    },
    /// Largest s such that every s vertices span a face.
    Neighborly {
        #[command(flatten)]
        nkt: Nkt,
        #[arg(long, default_value_t = 4)]
        s_max: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum ComplexCmd {
    /// Pseudomanifold, normality, balance and orientation checks.
    Verify { file: PathBuf },
    /// The binomial read off a balanced orientation.
    Binomial { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum ThreepointCmd {
    /// Triangle-lattice memberships of derangement monomials.
    Check {
        #[arg(short)]
        n: usize,
    },
    /// The determinant as f/g with f a polynomial in triangle variables.
    Det {
        #[arg(short)]
        n: usize,
        /// Which parts of the certificate to print, among f, g, det.
        #[arg(long, value_delimiter = ',', default_value = "f,g")]
        emit: Vec<String>,
    },
    /// Fiber sizes of the derangement map against 2^(t-s).
    Fibers {
        #[arg(short)]
        n: usize,
    },
    /// Generators of the ideal obtained by adding the saturated f.
    Tilde {
        #[arg(short)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum DesignsCmd {
    /// Every pod with its expansion.
    Pods(Nkt),
    /// Minimum positive support over a finite family of kernel vectors.
    Support {
        #[command(flatten)]
        nkt: Nkt,
        #[arg(long, default_value_t = 8, conflicts_with = "bound")]
        max_support: usize,
        /// Scan the box [-B, B]^N instead of +-1 vectors.
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Balance check for a design given as a JSON map file.
    Check {
        #[command(flatten)]
        nkt: Nkt,
        file: PathBuf,
    },
}

/// What a command hands back before formatting.
struct Outcome {
    result: Value,
    text: String,
    passed: bool,
    csv: Option<String>,
}

impl Outcome {
    fn new(result: Value, text: String, passed: bool) -> Self {
        Outcome {
            result,
            text,
            passed,
            csv: None,
        }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn command_name(c: &Command) -> String {
    let sub = match c {
        Command::Incidence(IncidenceCmd::Matrix { .. }) => "incidence matrix",
        Command::Incidence(IncidenceCmd::Rank { .. }) => "incidence rank",
        Command::Incidence(IncidenceCmd::Theorems { .. }) => "incidence theorems",
        Command::Toric(ToricCmd::Markov(_)) => "toric markov",
        Command::Toric(ToricCmd::Graver(_)) => "toric graver",
        Command::Toric(ToricCmd::Octahedral(_)) => "toric octahedral",
        Command::Toric(ToricCmd::Saturate(_)) => "toric saturate",
        Command::Polytope(PolytopeCmd::Volume { .. }) => "polytope volume",
        Command::Polytope(PolytopeCmd::Faces { .. }) => "polytope faces",
        Command::Polytope(PolytopeCmd::Neighborly { .. }) => "polytope neighborly",
        Command::Complex(ComplexCmd::Verify { .. }) => "complex verify",
        Command::Complex(ComplexCmd::Binomial { .. }) => "complex binomial",
        Command::Threepoint(ThreepointCmd::Check { .. }) => "threepoint check",
        Command::Threepoint(ThreepointCmd::Det { .. }) => "threepoint det",
        Command::Threepoint(ThreepointCmd::Fibers { .. }) => "threepoint fibers",
        Command::Threepoint(ThreepointCmd::Tilde { .. }) => "threepoint tilde",
        Command::Designs(DesignsCmd::Pods(_)) => "designs pods",
        Command::Designs(DesignsCmd::Support { .. }) => "designs support",
        Command::Designs(DesignsCmd::Check { .. }) => "designs check",
        Command::Acceptance { .. } => "acceptance",
    };
    sub.to_string()
}

fn basis_outcome(b: &crate::toric::BinomialBasis) -> Outcome {
    let degrees: Vec<String> = b.degree_counts().iter().map(|(d, c)| format!("{c} of degree {d}")).collect();
    let mut text = format!("{} binomials: {}\n", b.len(), degrees.join(", "));
    for line in b.display_lines("x") {
        text.push_str(&line);
        text.push('\n');
    }
    let result = json!({
        "count": b.len(),
        "degrees": b.degree_counts(),
        "binomials": to_value(b),
    });
    Outcome::new(result, text, true)
}

fn incidence(cmd: &IncidenceCmd, cfg: &RunConfig) -> Result<Outcome> {
    match cmd {
        IncidenceCmd::Matrix { nkt, allow_identity } => {
            let a = if *allow_identity {
                build_matrix_allow_identity(nkt.n, nkt.k, nkt.t)?
            } else {
                build_matrix(nkt.n, nkt.k, nkt.t)?
            };
            let mut text = String::new();
            for (label, row) in a.row_labels.iter().zip(a.dense()) {
                let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                text.push_str(&format!("{label:>8} {}\n", cells.join(" ")));
            }
            let labels = |v: &[SubsetIndex]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
            let result = json!({
                "n": a.n,
                "k": a.k,
                "t": a.t,
                "row_labels": labels(&a.row_labels),
                "col_labels": labels(&a.col_labels),
                "rows": a.dense(),
            });
            let mut o = Outcome::new(result, text, true);
            o.csv = Some(a.to_csv());
            Ok(o)
        }
        IncidenceCmd::Rank { nkt, primes, minors } => {
            let a = build_matrix(nkt.n, nkt.k, nkt.t)?;
            let full = a.rows().min(a.cols());
            let rq = rank_q(&a.matrix);
            let mut mod_p = Vec::new();
            for &p in primes {
                let r = rank_mod_p(&a.matrix, p)?;
                mod_p.push(json!({"p": p, "rank": r, "full": r == full}));
            }
            let mut text = format!("rank over Q: {rq} (full rank {full})\n");
            for m in &mod_p {
                text.push_str(&format!("p = {}: rank {}\n", m["p"], m["rank"]));
            }
            let mut result = json!({"n": nkt.n, "k": nkt.k, "t": nkt.t, "rank_q": rq, "full_rank": full, "mod_p": mod_p});
            if *minors {
                let g = gcd_maximal_minors(&a.matrix, full, cfg.minor_sample);
                text.push_str(&format!(
                    "gcd of {full}-minors: {} ({} enumerated{})\n",
                    g.gcd,
                    g.enumerated,
                    if g.complete { "" } else { ", incomplete" }
                ));
                result["minor_gcd"] = json!({"gcd": g.gcd.to_string(), "enumerated": g.enumerated, "complete": g.complete});
            }
            Ok(Outcome::new(result, text, rq == full))
        }
        IncidenceCmd::Theorems { n_max, primes } => {
            let r = check_rank_theorems(*n_max, primes)?;
            let text = format!(
                "{} triples, rank laws hold: {}; raw incidence disagrees with the F_p law in {} cases\n",
                r.rows.len(),
                r.all_ok(),
                r.raw_incidence_mismatches()
            );
            Ok(Outcome::new(to_value(&r), text, r.all_ok()))
        }
    }
}

fn toric(cmd: &ToricCmd, cfg: &RunConfig) -> Result<Outcome> {
    let matrix = |p: &Nkt| -> Result<ToricMatrix> { Ok(ToricMatrix::from(&build_matrix(p.n, p.k, p.t)?)) };
    match cmd {
        ToricCmd::Markov(p) => Ok(basis_outcome(&minimal_markov(&matrix(p)?, &cfg.toric)?)),
        ToricCmd::Graver(p) => Ok(basis_outcome(&graver_basis(&matrix(p)?, &cfg.toric)?)),
        ToricCmd::Octahedral(p) => Ok(basis_outcome(&octahedral_generators(p.n, p.k, p.t)?)),
        ToricCmd::Saturate(p) => {
            let oct = octahedral_generators(p.n, p.k, p.t)?;
            let eq = saturation_equals(&oct, &cfg.toric)?;
            Ok(Outcome::new(
                json!({"generators": oct.len(), "saturation_equals_toric_ideal": eq}),
                format!("{} octahedral quartics; saturation equals the toric ideal: {eq}\n", oct.len()),
                eq,
            ))
        }
    }
}

fn polytope(cmd: &PolytopeCmd, cfg: &RunConfig) -> Result<Outcome> {
    match cmd {
        PolytopeCmd::Volume { nkt, lattice } => {
            let a = build_matrix(nkt.n, nkt.k, nkt.t)?;
            let pc = PointConfig::from_incidence(&a);
            let tri = placing_triangulation_capped(&pc, cfg.volume_simplices)?;
            let lat = match lattice {
                LatticeArg::Euclidean => VolumeLattice::Euclidean,
                LatticeArg::Column => VolumeLattice::ColumnLattice,
            };
            let vol: num_bigint::BigInt = simplex_volumes(&pc, &tri, lat)?.into_iter().sum();
            let index = lattice_index(&pc)?;
            let name = if matches!(lattice, LatticeArg::Euclidean) { "euclidean" } else { "column" };
            Ok(Outcome::new(
                json!({
                    "lattice": name,
                    "dimension": tri.dim,
                    "simplices": tri.len(),
                    "normalized_volume": vol.to_string(),
                    "lattice_index": index.to_string(),
                }),
                format!("{name} normalized volume {vol} from {} simplices (dimension {})\n", tri.len(), tri.dim),
                true,
            ))
        }
        PolytopeCmd::Faces { nkt, subset } => {
            let a = build_matrix(nkt.n, nkt.k, nkt.t)?;
            let pc = PointConfig::from_incidence(&a);
            let subsets: Vec<Vec<SubsetIndex>> = if subset.is_empty() {
                all_pods(nkt.n, nkt.k, nkt.t)
                    .iter()
                    .map(|p| pod_expand(p, nkt.n).map(|d| d.positive_support()))
                    .collect::<Result<_>>()?
            } else {
                subset
                    .iter()
                    .map(|s| s.split(',').map(|l| SubsetIndex::parse(nkt.n, l.trim())).collect())
                    .collect::<Result<_>>()?
            };
            let mut rows = Vec::new();
            let mut text = String::new();
            let mut all_verified = true;
            for s in &subsets {
                let cols: Vec<usize> = s
                    .iter()
                    .map(|x| a.column_of(x).ok_or_else(|| Error::BadParameters(format!("{x} is not a {}-subset", nkt.k))))
                    .collect::<Result<_>>()?;
                let cert = is_face(&pc, &cols)?;
                let ok = cert.verify(&pc, &cols);
                all_verified &= ok;
                let labels: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                text.push_str(&format!("{{{}}}: {}\n", labels.join(","), if cert.is_face() { "face" } else { "not a face" }));
                rows.push(json!({"subset": labels, "face": cert.is_face(), "certificate": to_value(&cert), "verified": ok}));
            }
            Ok(Outcome::new(Value::Array(rows), text, all_verified))
        }
        PolytopeCmd::Neighborly { nkt, s_max } => {
            let a = build_matrix(nkt.n, nkt.k, nkt.t)?;
            let pc = PointConfig::from_incidence(&a);
            let nb = neighborliness(&pc, *s_max, cfg.face_lps)?;
            let mut text = format!("{}-neighborly (checked up to {}, {} LPs)\n", nb.neighborly, nb.checked_up_to, nb.lps_solved);
            let mut result = to_value(&nb);
            if let Some((sub, _)) = &nb.non_face {
                let labels: Vec<String> = sub.iter().map(|&j| a.col_labels[j].to_string()).collect();
                text.push_str(&format!("non-face: {{{}}}\n", labels.join(",")));
                result["non_face_labels"] = json!(labels);
            }
            Ok(Outcome::new(result, text, true))
        }
    }
}

fn complex(cmd: &ComplexCmd, cfg: &RunConfig) -> Result<Outcome> {
    match cmd {
        ComplexCmd::Verify { file } => {
            let c = SimplicialComplex::parse(&read(file)?)?;
            let r = verify(&c);
            let text = format!(
                "pure {}\ndimension {}\nstrongly connected {}\npseudomanifold {}\nboundaryless {}\nnormal {}\nbalanced {}\norientable {}\nfacet-ridge bipartite {}\n",
                r.pure, r.dimension, r.strongly_connected, r.pseudomanifold, r.boundaryless, r.normal, r.balanced, r.orientable, r.facet_ridge_bipartite
            );
            Ok(Outcome::new(to_value(&r), text, true))
        }
        ComplexCmd::Binomial { file } => {
            let c = SimplicialComplex::parse(&read(file)?)?;
            let eps = orientation(&c).ok_or_else(|| Error::PreconditionFailed("complex is not orientable".into()))?;
            let (b, a) = orientation_binomial(&c, &eps, &cfg.toric)?;
            Ok(Outcome::new(
                json!({
                    "n": c.n,
                    "k": c.facets[0].len(),
                    "t": c.facets[0].len() - 1,
                    "degree": b.degree(),
                    "binomial": b.to_json(&a.labels),
                    "in_kernel": true,
                    "primitive": true,
                }),
                format!("{}\n", b.display_with("x", &a.labels)),
                true,
            ))
        }
    }
}

fn threepoint(cmd: &ThreepointCmd, cfg: &RunConfig) -> Result<Outcome> {
    match cmd {
        ThreepointCmd::Check { n } => {
            let r = check_section5(*n, cfg.max_derangement_n)?;
            let mut text = format!("n = {n}: {} derangements, triangle lattice rank {}\n", r.derangements, r.lattice_rank);
            for c in &r.claims {
                text.push_str(&format!("[{}] {} ({} checked)\n", if c.passed { "ok" } else { "FAILED" }, c.name, c.checked));
            }
            Ok(Outcome::new(to_value(&r), text, r.all_passed()))
        }
        ThreepointCmd::Det { n, emit } => {
            let e = det_as_c_expression(*n, cfg.max_det_n)?;
            let mut result = json!({"n": n, "verified": e.verified, "det_terms": e.det.len()});
            let mut text = format!("verified: {}\n", e.verified);
            let full = to_value(&e);
            let edge_labels = crate::threepoint::EdgeVector::labels(*n);
            for part in emit {
                let (value, shown) = match part.as_str() {
                    "f" => (json!({"terms": full["f"], "text": full["f_text"]}), e.f_display()),
                    "g" => (json!({"terms": full["g"], "text": full["g_text"]}), e.g_display()),
                    "det" => (
                        json!({"terms": to_value(&e.det.to_json(&edge_labels)), "text": e.det.display_with("p", &edge_labels)}),
                        e.det.display_with("p", &edge_labels),
                    ),
                    other => return Err(Error::BadParameters(format!("unknown --emit part {other}"))),
                };
                result[part.as_str()] = value;
                text.push_str(&format!("{part} = {shown}\n"));
            }
            Ok(Outcome::new(result, text, e.verified))
        }
        ThreepointCmd::Fibers { n } => {
            let r = check_fibers(*n, cfg.max_derangement_n)?;
            let text = format!(
                "n = {n}: {} derangements, {} distinct images, {} mismatches\n",
                r.derangements,
                r.distinct_images,
                r.mismatches.len()
            );
            Ok(Outcome::new(to_value(&r), text, r.ok()))
        }
        ThreepointCmd::Tilde { n } => {
            let t = tilde_ideal_generators(*n, cfg.max_det_n, &cfg.toric)?;
            let text = format!(
                "{} generators ({} Markov + f); saturated f: {}; containment: {}\n",
                t.generator_count(),
                t.markov.len(),
                if t.unit_ideal { "unit ideal".to_string() } else { format!("{} terms", t.saturated_f.len()) },
                t.containment_holds()
            );
            Ok(Outcome::new(to_value(&t), text, t.containment_holds()))
        }
    }
}

fn designs(cmd: &DesignsCmd, cfg: &RunConfig) -> Result<Outcome> {
    match cmd {
        DesignsCmd::Pods(p) => {
            build_matrix(p.n, p.k, p.t)?;
            let pods = all_pods(p.n, p.k, p.t);
            let expanded: Vec<NullDesign> = pods.iter().map(|x| pod_expand(x, p.n)).collect::<Result<_>>()?;
            let text = expanded.iter().map(|d| format!("{}\n", to_value(d))).collect();
            let result = pods
                .iter()
                .zip(&expanded)
                .map(|(pod, d)| json!({"pod": to_value(pod), "design": to_value(d)}))
                .collect();
            Ok(Outcome::new(Value::Array(result), text, true))
        }
        DesignsCmd::Support { nkt, max_support, bound } => {
            let a = build_matrix(nkt.n, nkt.k, nkt.t)?;
            let mode = match bound {
                Some(b) => ScanMode::Box { bound: *b },
                None => ScanMode::PlusMinusOne { max_support: *max_support },
            };
            let s = min_support_scan(&a, mode, cfg.support_scan)?;
            let text = format!(
                "minimum positive support {} over {} vectors\n",
                s.min_positive_support.map_or("none".to_string(), |m| m.to_string()),
                s.enumerated
            );
            Ok(Outcome::new(to_value(&s), text, true))
        }
        DesignsCmd::Check { nkt, file } => {
            build_matrix(nkt.n, nkt.k, nkt.t)?;
            let d = NullDesign::from_json(nkt.n, nkt.k, &read(file)?)?;
            let b = is_null_design(&d, nkt.t);
            let text = match &b.violated {
                None => format!("null {}-design\n", nkt.t),
                Some(s) => format!("not a null {}-design: the sum over supersets of {s} is nonzero\n", nkt.t),
            };
            Ok(Outcome::new(to_value(&b), text, b.balanced))
        }
    }
}

fn acceptance_cmd(all: bool, ids: &[usize], cfg: &RunConfig) -> Result<Outcome> {
    let ids: Vec<usize> = if all || ids.is_empty() { (1..=CRITERIA).collect() } else { ids.to_vec() };
    if let Some(bad) = ids.iter().find(|&&i| i == 0 || i > CRITERIA) {
        return Err(Error::BadParameters(format!("criteria are numbered 1..={CRITERIA}, got {bad}")));
    }
    let results: Vec<CriterionResult> = ids.iter().map(|&i| run_criterion(i, cfg)).collect();
    let text = results.iter().map(|r| format!("{}\n", r.line())).collect();
    let passed = results.iter().all(|r| r.passed);
    Ok(Outcome::new(to_value(&results), text, passed))
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<Outcome> {
    match cmd {
        Command::Incidence(c) => incidence(c, cfg),
        Command::Toric(c) => toric(c, cfg),
        Command::Polytope(c) => polytope(c, cfg),
        Command::Complex(c) => complex(c, cfg),
        Command::Threepoint(c) => threepoint(c, cfg),
        Command::Designs(c) => designs(c, cfg),
        Command::Acceptance { all, criterion } => acceptance_cmd(*all, criterion, cfg),
    }
}

/// Exit code for a library error: budget and input problems are usage
/// errors, everything else means a check could not be completed.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. }
        | Error::BadParameters(_)
        | Error::Parse(_)
        | Error::IndexOutOfRange { .. }
        | Error::RankOutOfRange { .. }
        | Error::CompositeModulus(_) => 2,
        _ => 1,
    }
}

/// Runs a parsed command line, returning the report text and exit code.
pub fn execute(cli: &Cli) -> (String, i32) {
    let cfg = cli.global.config();
    if let Err(e) = cfg.validate() {
        return (format!("error: {e}\n"), 2);
    }
    if let Some(w) = cfg.workers {
        // a second initialization in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w).build_global();
    }
    let name = command_name(&cli.command);
    if cfg.format == OutputFormat::Csv && name != "incidence matrix" {
        return ("error: --format csv is only available for `incidence matrix`\n".into(), 2);
    }
    let start = Instant::now();
    let outcome = match dispatch(&cli.command, &cfg) {
        Ok(o) => o,
        Err(e) => return (format!("error: {e}\n"), exit_code(&e)),
    };
    let code = if outcome.passed { 0 } else { 1 };
    let body = match cfg.format {
        OutputFormat::Csv => outcome.csv.unwrap_or_default(),
        OutputFormat::Text => outcome.text,
        OutputFormat::Json => {
            let mut report = json!({"command": name, "passed": outcome.passed, "result": outcome.result});
            if !cli.global.no_meta {
                let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
                report["meta"] = json!({
                    "version": env!("CARGO_PKG_VERSION"),
                    "elapsed_ms": start.elapsed().as_millis() as u64,
                    "timestamp": timestamp,
                    "config": to_value(&cfg),
                });
            }
            let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
            s.push('\n');
            s
        }
    };
    (body, code)
}

/// Parses `args`, runs the command and writes the report. Returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (body, code) = execute(&cli);
    if body.starts_with("error: ") {
        eprint!("{body}");
        return code;
    }
    match &cli.global.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                eprintln!("error: {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{body}"),
    }
    code
}

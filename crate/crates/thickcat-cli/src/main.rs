//! Command-line driver: load a quiver fixture, enumerate its thick
//! subcategory lattice, compute centres and frames, and run the verification
//! sweeps. Output is deterministic JSON or Graphviz DOT; the process exits
//! nonzero when any check is inconsistent (sequence failures on
//! non-commuting pairs are expected and count as consistent).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use thickcat::bousfield::Localizer;
use thickcat::centre::{
    adjoint_criterion, centre, commutes, verify_central_algebra, CommutingMatrix,
};
use thickcat::derived::DObject;
use thickcat::dot::hasse_dot;
use thickcat::field::FieldSpec;
use thickcat::frames::{CentralFrame, FiniteLattice};
use thickcat::ind::IndTable;
use thickcat::mv::{mv_report, verify_loc_products, verify_noether};
use thickcat::quiver::{Quiver, QuiverSpecFile};
use thickcat::report::{
    CentreReport, CheckOutcome, LatticeReport, RunReport, SupportEntry, VerifyReport,
};
use thickcat::tensor::{enumerate_tensor_ideals, tensor_commuting_audit, TensorTable};
use thickcat::thick::{ThickEnum, ThickLattice};
use thickcat::verdier::{verify_loc_seq, verify_nested_rules};

#[derive(Parser)]
#[command(name = "thickcat", about = "thick subcategory lattices and their centres")]
struct Cli {
    /// Quiver fixture file (JSON: name, vertices, 1-based arrows, field).
    #[arg(long)]
    quiver: PathBuf,
    /// Override the fixture's prime field.
    #[arg(long)]
    field: Option<u64>,
    /// Sublattice selector: full, chain:<comma separated element ids>, or
    /// ideals (thick tensor ideals).
    #[arg(long, default_value = "full")]
    sublattice: String,
    /// Output format for lattice and centre commands.
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    out: OutFormat,
    /// Half-width of the degree window for exactness checks.
    #[arg(long, default_value_t = 3)]
    window: i64,
    /// Maximum number of closure computations during enumeration.
    #[arg(long, default_value_t = 1 << 20)]
    cap: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate the thick subcategory lattice.
    Lattice,
    /// Compute the centre of the selected sublattice with its frame data.
    Centre,
    /// Run verification sweeps.
    Verify {
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Which {
    Loc,
    Mv,
    Excision,
    Noether,
    Tensor,
    All,
}

#[derive(Copy, Clone, ValueEnum)]
enum OutFormat {
    Json,
    Dot,
}

struct Context {
    name: String,
    p: u64,
    q: Quiver,
    table: IndTable,
}

impl Context {
    fn load(cli: &Cli) -> Result<Context, String> {
        let text = std::fs::read_to_string(&cli.quiver)
            .map_err(|e| format!("cannot read {}: {e}", cli.quiver.display()))?;
        let spec: QuiverSpecFile =
            serde_json::from_str(&text).map_err(|e| format!("fixture parse error: {e}"))?;
        let q = spec.to_quiver().map_err(|e| format!("invalid quiver: {e}"))?;
        let p = cli.field.unwrap_or(spec.field);
        let field = FieldSpec::new(p).map_err(|e| format!("invalid field: {e}"))?;
        let table = IndTable::new(&q, field);
        if table.len() >= 64 || (1u64 << table.len()) > cli.cap {
            return Err(format!(
                "enumeration needs {} closures, above the cap {}",
                1u128 << table.len(),
                cli.cap
            ));
        }
        Ok(Context { name: spec.name, p, q, table })
    }

    fn label_bits(&self, bits: u64) -> String {
        if bits == 0 {
            return "0".to_string();
        }
        let labels: Vec<String> = (0..self.table.len())
            .filter(|&i| bits & (1 << i) != 0)
            .map(|i| self.table.label(i))
            .collect();
        format!("{{{}}}", labels.join(","))
    }
}

fn parse_sublattice(
    selector: &str,
    ctx: &Context,
    lat: &ThickLattice,
) -> Result<Vec<usize>, String> {
    match selector {
        "full" => Ok((0..lat.len()).collect()),
        "ideals" => {
            let tt = TensorTable::new(&ctx.q, &ctx.table);
            Ok(enumerate_tensor_ideals(lat, &tt))
        }
        s if s.starts_with("chain:") => {
            let mut ids: Vec<usize> = Vec::new();
            for part in s["chain:".len()..].split(',') {
                let id: usize = part
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad element id in selector: {part}"))?;
                if id >= lat.len() {
                    return Err(format!("element id {id} out of range"));
                }
                ids.push(id);
            }
            for &b in [lat.bottom(), lat.top()].iter() {
                if !ids.contains(&b) {
                    ids.push(b);
                }
            }
            ids.sort();
            ids.dedup();
            for &a in &ids {
                for &b in &ids {
                    if !lat.leq(a, b) && !lat.leq(b, a) {
                        return Err(format!("elements {a} and {b} are incomparable"));
                    }
                }
            }
            Ok(ids)
        }
        other => Err(format!("unknown sublattice selector: {other}")),
    }
}

fn lattice_labels(ctx: &Context, lat: &ThickLattice) -> Vec<String> {
    lat.elements.iter().map(|&b| ctx.label_bits(b)).collect()
}

fn cmd_lattice(cli: &Cli, ctx: &Context) -> Result<(String, bool), String> {
    let en = ThickEnum::new(&ctx.table);
    let lat = ThickLattice::compute(&en);
    let fl = FiniteLattice::from_thick(&lat);
    let labels = lattice_labels(ctx, &lat);
    match cli.out {
        OutFormat::Dot => Ok((hasse_dot(&fl, &labels, &ctx.name), true)),
        OutFormat::Json => {
            let mut rep = RunReport::new(&ctx.name, ctx.p);
            rep.lattice = Some(LatticeReport {
                element_count: lat.len(),
                elements: labels,
                distributive: fl.is_distributive(),
            });
            Ok((rep.to_json(), true))
        }
    }
}

fn cmd_centre(cli: &Cli, ctx: &Context) -> Result<(String, bool), String> {
    let en = ThickEnum::new(&ctx.table);
    let lat = ThickLattice::compute(&en);
    let cm = CommutingMatrix::compute(&ctx.table, &lat);
    let sub = parse_sublattice(&cli.sublattice, ctx, &lat)?;
    let z = centre(&cm, &sub);
    let zf = CentralFrame::new(&lat, z.clone());
    let labels: Vec<String> = z.iter().map(|&i| ctx.label_bits(lat.elements[i])).collect();
    if matches!(cli.out, OutFormat::Dot) {
        return Ok((hasse_dot(&zf.frame, &labels, &ctx.name), true));
    }
    let distributive = zf.frame.is_distributive();
    let spatial = zf.frame.spatial_check();
    let support_bijection = zf.support_bijection_check(&lat);
    let points: Vec<String> = zf
        .frame
        .meet_primes()
        .iter()
        .map(|&p| ctx.label_bits(lat.elements[zf.members[p]]))
        .collect();
    let supports: Vec<SupportEntry> = (0..ctx.table.len())
        .map(|ind| SupportEntry {
            object: ctx.table.label(ind),
            points: zf
                .central_support(&lat, &DObject::of_ind(ind, 0))
                .into_iter()
                .map(|p| ctx.label_bits(lat.elements[zf.members[p]]))
                .collect(),
        })
        .collect();
    let ok = distributive && spatial && support_bijection;
    let mut rep = RunReport::new(&ctx.name, ctx.p);
    rep.centre = Some(CentreReport {
        sublattice: cli.sublattice.clone(),
        sublattice_members: sub
            .iter()
            .map(|&i| ctx.label_bits(lat.elements[i]))
            .collect(),
        centre_members: labels,
        commuting: cm.entries.clone(),
        distributive,
        spatial,
        support_bijection,
        points,
        supports,
    });
    Ok((rep.to_json(), ok))
}

fn cmd_verify(cli: &Cli, ctx: &Context, which: Which) -> Result<(String, bool), String> {
    let table = &ctx.table;
    let en = ThickEnum::new(table);
    let lat = ThickLattice::compute(&en);
    let cm = CommutingMatrix::compute(table, &lat);
    let loc = Localizer::new(table, &en);
    let window = (-cli.window, cli.window);
    let mut checks: Vec<CheckOutcome> = Vec::new();
    let want = |w: Which| -> bool { matches!(which, Which::All) || matches!((which, w),
        (Which::Loc, Which::Loc) | (Which::Mv, Which::Mv) | (Which::Excision, Which::Excision)
        | (Which::Noether, Which::Noether) | (Which::Tensor, Which::Tensor)) };

    if want(Which::Loc) {
        let mut failures = 0usize;
        for &u in &lat.elements {
            for ind in 0..table.len() {
                let tri = loc.triangle(u, &DObject::of_ind(ind, 0));
                if !verify_loc_seq(table, &tri, window).passed {
                    failures += 1;
                }
            }
        }
        checks.push(CheckOutcome {
            name: "localization-sequence-exactness".into(),
            passed: failures == 0,
            details: format!(
                "{} (subcategory, object) pairs, {} failures",
                lat.len() * table.len(),
                failures
            ),
        });
    }

    let mut reports = Vec::new();
    if want(Which::Mv) || want(Which::Excision) {
        for &u in &lat.elements {
            for &v in &lat.elements {
                reports.push(mv_report(&loc, u, v, window));
            }
        }
    }

    if want(Which::Mv) {
        let mut mismatches = 0usize;
        let mut central_failures = 0usize;
        for r in &reports {
            if r.commuting != r.lambda_witnesses.is_empty() {
                mismatches += 1;
            }
            if r.commuting && !r.gamma_witnesses.is_empty() {
                mismatches += 1;
            }
            let u_central = lat
                .elements
                .iter()
                .all(|&w| commutes(table, r.u, w));
            if u_central && (!r.lambda_witnesses.is_empty() || !r.gamma_witnesses.is_empty()) {
                central_failures += 1;
            }
        }
        checks.push(CheckOutcome {
            name: "mayer-vietoris-commuting-equivalence".into(),
            passed: mismatches == 0,
            details: format!("{} pairs, {} mismatches", reports.len(), mismatches),
        });
        checks.push(CheckOutcome {
            name: "central-pair-sequences".into(),
            passed: central_failures == 0,
            details: format!("{central_failures} central pairs with sequence failures"),
        });
    }

    if want(Which::Excision) {
        let mismatches = reports
            .iter()
            .filter(|r| r.commuting != r.excision_failures.is_empty())
            .count();
        checks.push(CheckOutcome {
            name: "excision-commuting-equivalence".into(),
            passed: mismatches == 0,
            details: format!("{} pairs, {} mismatches", reports.len(), mismatches),
        });
    }

    if want(Which::Noether) {
        let mut failures = 0usize;
        let mut pairs = 0usize;
        for &u in &lat.elements {
            for &v in &lat.elements {
                if !commutes(table, u, v) {
                    continue;
                }
                pairs += 1;
                if !verify_noether(&loc, u, v) || !verify_loc_products(&loc, u, v) {
                    failures += 1;
                }
            }
        }
        checks.push(CheckOutcome {
            name: "noether-and-product-comparisons".into(),
            passed: failures == 0,
            details: format!("{pairs} commuting pairs, {failures} failures"),
        });
    }

    if want(Which::Tensor) {
        let tt = TensorTable::new(&ctx.q, table);
        let ideals = enumerate_tensor_ideals(&lat, &tt);
        let audit = tensor_commuting_audit(table, &lat, &ideals);
        let pairs: Vec<String> = audit
            .noncommuting_pairs
            .iter()
            .map(|&(a, b)| {
                format!(
                    "({},{})",
                    ctx.label_bits(lat.elements[a]),
                    ctx.label_bits(lat.elements[b])
                )
            })
            .collect();
        checks.push(CheckOutcome {
            name: "tensor-ideal-audit".into(),
            passed: true,
            details: format!(
                "{} of {} elements are ideals; non-commuting ideal pairs: [{}]",
                ideals.len(),
                lat.len(),
                pairs.join(",")
            ),
        });
    }

    if matches!(which, Which::All) {
        let mut nested_failures = 0usize;
        for &u1 in &lat.elements {
            for &u2 in &lat.elements {
                if u1 & !u2 != 0 {
                    continue;
                }
                for ind in 0..table.len() {
                    if !verify_nested_rules(&loc, u1, u2, &DObject::of_ind(ind, 0)) {
                        nested_failures += 1;
                    }
                }
            }
        }
        checks.push(CheckOutcome {
            name: "nested-interchange-rules".into(),
            passed: nested_failures == 0,
            details: format!("{nested_failures} failures"),
        });

        let sub: Vec<usize> = (0..lat.len()).collect();
        checks.push(CheckOutcome {
            name: "central-algebra-identities".into(),
            passed: verify_central_algebra(&lat, &cm, &sub),
            details: "meets, joins, and distributivity over central elements".into(),
        });

        let z = centre(&cm, &sub);
        let unsound = z
            .iter()
            .filter(|&&i| !adjoint_criterion(&en, lat.elements[i]))
            .count();
        checks.push(CheckOutcome {
            name: "adjoint-criterion-soundness".into(),
            passed: unsound == 0,
            details: format!("{unsound} central elements with distinct perpendiculars"),
        });

        let zf = CentralFrame::new(&lat, z);
        checks.push(CheckOutcome {
            name: "central-frame-spatiality".into(),
            passed: zf.frame.is_distributive()
                && zf.frame.spatial_check()
                && zf.support_bijection_check(&lat),
            details: "distributive, spatial, support bijection".into(),
        });
    }

    let consistent = checks.iter().all(|c| c.passed);
    let mut rep = RunReport::new(&ctx.name, ctx.p);
    rep.verify = Some(VerifyReport { checks, consistent });
    Ok((rep.to_json(), consistent))
}

fn main() -> ExitCode {
    let start = std::time::Instant::now();
    let cli = Cli::parse();
    let ctx = match Context::load(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = match cli.cmd {
        Cmd::Lattice => cmd_lattice(&cli, &ctx),
        Cmd::Centre => cmd_centre(&cli, &ctx),
        Cmd::Verify { which } => cmd_verify(&cli, &ctx, which),
    };
    match result {
        Ok((text, ok)) => {
            println!("{text}");
            // timing goes to stderr so stdout stays byte-deterministic
            eprintln!("elapsed: {:?}", start.elapsed());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

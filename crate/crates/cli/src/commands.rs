use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use log::{info, warn};
use serde::Serialize;

use lad_core::dsl::{self, AssumptionKind, EndoDecl, FixtureFile, MapDecl};
use lad_core::dynamics::{CheckOutcome, DynamicalSystem, MorphismSetup};
use lad_core::entropy::entropy_report;
use lad_core::groebner::GbConfig;
use lad_core::harness::{verify_additivity, verify_inequality, Assumptions};
use lad_core::ideals::{
    local_colength, ColengthConfig, ColengthMethod, LocalRingPresentation, Primality,
};
use lad_core::oracle::oracle_local_colength;

use crate::args::{Cli, Command, Common, Format, MorphismArgs, Verify};
use crate::report::{self, csv_record, json, FlatnessJson};
use crate::{Failure, Outcome, Status};

/// Everything a subcommand needs besides its own arguments.
pub struct RunConfig {
    pub n_max: usize,
    pub colength: ColengthConfig,
    pub format: Format,
}

impl RunConfig {
    fn new(common: &Common, n_max: u64) -> Self {
        RunConfig {
            n_max: n_max as usize,
            colength: ColengthConfig {
                truncation_cap: common.truncation_cap,
                gb: GbConfig {
                    max_basis_size: common.max_basis_size as usize,
                    max_degree: common.max_degree,
                    ..GbConfig::default()
                },
            },
            format: common.format,
        }
    }
}

fn load(path: &Path) -> Result<FixtureFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    dsl::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn ring<'a>(file: &'a FixtureFile, name: &str) -> Result<&'a Arc<LocalRingPresentation>, Failure> {
    file.ring(name)
        .map(|r| &r.presentation)
        .ok_or_else(|| Failure::Usage(format!("no ring named `{name}`")))
}

/// The endomorphism named on the command line, or the only one declared on
/// `ring`.
fn pick_endo<'a>(
    file: &'a FixtureFile,
    ring: &str,
    explicit: Option<&str>,
    flag: &str,
) -> Result<&'a EndoDecl, Failure> {
    if let Some(name) = explicit {
        let e = file
            .endo(name)
            .ok_or_else(|| Failure::Usage(format!("no endomorphism named `{name}`")))?;
        if e.ring != ring {
            return Err(Failure::Usage(format!(
                "`{name}` acts on {}, not on {ring}",
                e.ring
            )));
        }
        return Ok(e);
    }
    let on_ring: Vec<&'a EndoDecl> = file.endos.iter().filter(|e| e.ring == ring).collect();
    match on_ring[..] {
        [e] => Ok(e),
        [] => Err(Failure::Usage(format!(
            "no endomorphism declared on {ring}"
        ))),
        _ => Err(Failure::Usage(format!(
            "several endomorphisms act on {ring}; choose one with {flag}"
        ))),
    }
}

fn system(e: &EndoDecl, cfg: &RunConfig) -> Result<DynamicalSystem, Failure> {
    Ok(DynamicalSystem::new(e.endo.clone(), &cfg.colength)?)
}

fn setup(file: &FixtureFile, m: &MorphismArgs, cfg: &RunConfig) -> Result<MorphismSetup, Failure> {
    let decl = file
        .map(&m.map)
        .ok_or_else(|| Failure::Usage(format!("no map named `{}`", m.map)))?;
    let phi = pick_endo(file, &decl.source, m.phi.as_deref(), "--phi")?;
    let psi = pick_endo(file, &decl.target, m.psi.as_deref(), "--psi")?;
    info!(
        "map {}: source endomorphism {}, target endomorphism {}",
        decl.name, phi.name, psi.name
    );
    Ok(MorphismSetup::new(
        system(phi, cfg)?,
        system(psi, cfg)?,
        decl.images.clone(),
    )?)
}

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let common = &cli.common;
    match &cli.command {
        Command::Check { file } => check(&load(file)?, &RunConfig::new(common, 1)),
        Command::Length { file, ring, ideal } => {
            length(&load(file)?, ring, ideal, &RunConfig::new(common, 1))
        }
        Command::Entropy {
            file,
            endo,
            ideal,
            max_iter,
        } => entropy(
            &load(file)?,
            endo,
            ideal.as_deref(),
            &RunConfig::new(common, *max_iter),
        ),
        Command::Verify(Verify::Additivity {
            morphism,
            q,
            qprime,
        }) => {
            let cfg = RunConfig::new(common, morphism.max_iter);
            additivity(&load(&morphism.file)?, morphism, q, qprime, &cfg)
        }
        Command::Verify(Verify::Inequality { morphism }) => {
            let cfg = RunConfig::new(common, morphism.max_iter);
            inequality(&load(&morphism.file)?, morphism, &cfg)
        }
        Command::Dim { file, ring } => dim(&load(file)?, ring, &RunConfig::new(common, 1)),
        Command::OracleLength { file, ring, ideal } => {
            oracle(&load(file)?, ring, ideal, &RunConfig::new(common, 1))
        }
    }
}

fn verified(report: String) -> Outcome {
    Outcome {
        report,
        status: Status::Verified,
    }
}

fn verdict(passed: bool) -> Status {
    if passed {
        Status::Verified
    } else {
        Status::CheckFailed
    }
}

fn method_name(m: ColengthMethod) -> &'static str {
    match m {
        ColengthMethod::Global => "global",
        ColengthMethod::Truncation => "truncation",
    }
}

fn length(
    file: &FixtureFile,
    ring_name: &str,
    ideal: &str,
    cfg: &RunConfig,
) -> Result<Outcome, Failure> {
    #[derive(Serialize)]
    struct LengthJson<'a> {
        ring: &'a str,
        ideal: String,
        length: u64,
        truncation: u32,
        method: &'static str,
    }
    let r = ring(file, ring_name)?;
    let j = dsl::parse_ideal(ideal, r).map_err(|e| Failure::Usage(format!("--ideal: {e}")))?;
    let c = local_colength(&j, &cfg.colength)?;
    let out = LengthJson {
        ring: ring_name,
        ideal: j.to_string(),
        length: c.value,
        truncation: c.truncation,
        method: method_name(c.method),
    };
    let text = match cfg.format {
        Format::Json => json(&out),
        Format::Csv => csv_record(
            &["ring", "ideal", "length", "truncation", "method"],
            vec![
                out.ring.into(),
                out.ideal.clone(),
                out.length.to_string(),
                out.truncation.to_string(),
                out.method.into(),
            ],
        )?,
        Format::Human => format!(
            "length of {} modulo {} is {} (certified at truncation N = {}, {})\n",
            ring_name, out.ideal, out.length, out.truncation, out.method
        ),
    };
    Ok(verified(text))
}

fn entropy(
    file: &FixtureFile,
    endo: &str,
    ideal: Option<&str>,
    cfg: &RunConfig,
) -> Result<Outcome, Failure> {
    let e = file
        .endo(endo)
        .ok_or_else(|| Failure::Usage(format!("no endomorphism named `{endo}`")))?;
    let r = ring(file, &e.ring)?;
    let q = match ideal {
        Some(text) => {
            dsl::parse_ideal(text, r).map_err(|e| Failure::Usage(format!("--ideal: {e}")))?
        }
        None => r.maximal_ideal(),
    };
    let sys = system(e, cfg)?;
    let rep = entropy_report(&sys, &q, cfg.n_max, &cfg.colength)?;
    Ok(verified(report::entropy(&rep, cfg.format)?))
}

fn assumptions(file: &FixtureFile, map: &str) -> Assumptions {
    let target = file.map(map).map(|m| m.target.as_str()).unwrap_or_default();
    Assumptions {
        flat: file.assumes(AssumptionKind::Flat, map),
        cohen_macaulay: file.assumes(AssumptionKind::CohenMacaulay, target),
    }
}

fn additivity(
    file: &FixtureFile,
    m: &MorphismArgs,
    q: &str,
    qprime: &str,
    cfg: &RunConfig,
) -> Result<Outcome, Failure> {
    let s = setup(file, m, cfg)?;
    let q =
        dsl::parse_ideal(q, s.source().ring()).map_err(|e| Failure::Usage(format!("--q: {e}")))?;
    let qp = dsl::parse_ideal(qprime, s.target().ring())
        .map_err(|e| Failure::Usage(format!("--qprime: {e}")))?;
    let check = verify_additivity(
        &s,
        &q,
        &qp,
        cfg.n_max,
        assumptions(file, &m.map),
        &cfg.colength,
    )?;
    for note in &check.flatness.notes {
        warn!("flatness advisory: {note}");
    }
    if check.flatness.dimension_check == CheckOutcome::Fail {
        warn!("flatness advisory: dimension check failed; additivity is not expected");
    }
    Ok(Outcome {
        report: report::additivity(&m.map, &check, cfg.format)?,
        status: verdict(check.passed()),
    })
}

fn inequality(file: &FixtureFile, m: &MorphismArgs, cfg: &RunConfig) -> Result<Outcome, Failure> {
    let s = setup(file, m, cfg)?;
    let check = verify_inequality(&s, cfg.n_max, &cfg.colength)?;
    Ok(Outcome {
        report: report::inequality(&m.map, &check, cfg.format)?,
        status: verdict(check.passed()),
    })
}

fn dim(file: &FixtureFile, ring_name: &str, cfg: &RunConfig) -> Result<Outcome, Failure> {
    #[derive(Serialize)]
    struct DimJson<'a> {
        ring: &'a str,
        dim: usize,
    }
    let d = ring(file, ring_name)?.dim()?;
    let text = match cfg.format {
        Format::Json => json(&DimJson {
            ring: ring_name,
            dim: d,
        }),
        Format::Csv => csv_record(&["ring", "dim"], vec![ring_name.into(), d.to_string()])?,
        Format::Human => format!("dim {ring_name} = {d}\n"),
    };
    Ok(verified(text))
}

fn oracle(
    file: &FixtureFile,
    ring_name: &str,
    ideal: &str,
    cfg: &RunConfig,
) -> Result<Outcome, Failure> {
    #[derive(Serialize)]
    struct OracleJson<'a> {
        ring: &'a str,
        ideal: String,
        length: u64,
        degree_bound: u32,
    }
    let r = ring(file, ring_name)?;
    let j = dsl::parse_ideal(ideal, r).map_err(|e| Failure::Usage(format!("--ideal: {e}")))?;
    let c = oracle_local_colength(&j, cfg.colength.truncation_cap)?;
    let out = OracleJson {
        ring: ring_name,
        ideal: j.to_string(),
        length: c.value,
        degree_bound: c.degree_bound,
    };
    let text = match cfg.format {
        Format::Json => json(&out),
        Format::Csv => csv_record(
            &["ring", "ideal", "length", "degree_bound"],
            vec![
                out.ring.into(),
                out.ideal.clone(),
                out.length.to_string(),
                out.degree_bound.to_string(),
            ],
        )?,
        Format::Human => format!(
            "oracle length of {} modulo {} is {} (degree bound {})\n",
            ring_name, out.ideal, out.length, out.degree_bound
        ),
    };
    Ok(verified(text))
}

#[derive(Serialize)]
struct RingJson {
    name: String,
    presentation: String,
    dim: usize,
}

#[derive(Serialize)]
struct EndoJson {
    name: String,
    ring: String,
    well_defined: bool,
    finite_length: &'static str,
    problem: Option<String>,
}

#[derive(Serialize)]
struct PairJson {
    phi: String,
    psi: String,
    commutes: bool,
    flatness: Option<FlatnessJson>,
}

#[derive(Serialize)]
struct MapJson {
    name: String,
    source: String,
    target: String,
    ok: bool,
    problem: Option<String>,
    pairs: Vec<PairJson>,
}

#[derive(Serialize)]
struct CheckJson {
    field: Option<u32>,
    ok: bool,
    rings: Vec<RingJson>,
    endos: Vec<EndoJson>,
    maps: Vec<MapJson>,
}

fn primality_name(p: Primality) -> &'static str {
    match p {
        Primality::Yes => "yes",
        Primality::No => "no",
        Primality::Inconclusive => "inconclusive",
    }
}

fn check_endo(
    e: &EndoDecl,
    cfg: &RunConfig,
) -> Result<(EndoJson, Option<DynamicalSystem>), Failure> {
    let mut out = EndoJson {
        name: e.name.clone(),
        ring: e.ring.clone(),
        well_defined: true,
        finite_length: "inconclusive",
        problem: None,
    };
    if let Err(err) = e.endo.check_well_defined() {
        out.well_defined = false;
        out.problem = Some(err.to_string());
        return Ok((out, None));
    }
    let finite = e.endo.check_finite_length(&cfg.colength)?;
    out.finite_length = primality_name(finite);
    if finite != Primality::Yes {
        return Ok((out, None));
    }
    Ok((
        out,
        Some(DynamicalSystem::new(e.endo.clone(), &cfg.colength)?),
    ))
}

/// The map must be well defined; when both rings carry validated
/// endomorphisms it must also commute with at least one pair of them.
fn check_map(
    file: &FixtureFile,
    m: &MapDecl,
    systems: &[(String, String, DynamicalSystem)],
) -> Result<MapJson, Failure> {
    let mut out = MapJson {
        name: m.name.clone(),
        source: m.source.clone(),
        target: m.target.clone(),
        ok: true,
        problem: None,
        pairs: Vec::new(),
    };
    let source = ring(file, &m.source)?;
    let target = ring(file, &m.target)?;
    let tgb = target.defining_basis()?;
    for g in source.defining_ideal() {
        if !tgb.contains(&g.substitute(&m.images)?) {
            out.ok = false;
            out.problem = Some(format!(
                "image of {} is not in the defining ideal of {}",
                source.fmt_poly(g),
                m.target
            ));
            return Ok(out);
        }
    }
    let cm = file.assumes(AssumptionKind::CohenMacaulay, &m.target);
    for (phi, _, ps) in systems.iter().filter(|s| s.1 == m.source) {
        for (psi, _, ts) in systems.iter().filter(|s| s.1 == m.target) {
            let setup = MorphismSetup::new(ps.clone(), ts.clone(), m.images.clone())?;
            let commutes = setup.check_morphism()?;
            let flatness = if commutes {
                Some(FlatnessJson::from(&setup.flatness_advisory(cm)?))
            } else {
                None
            };
            out.pairs.push(PairJson {
                phi: phi.clone(),
                psi: psi.clone(),
                commutes,
                flatness,
            });
        }
    }
    if !out.pairs.is_empty() && !out.pairs.iter().any(|p| p.commutes) {
        out.ok = false;
        out.problem = Some("does not commute with any pair of endomorphisms".into());
    }
    Ok(out)
}

/// Validates every declaration: endomorphisms must be well defined and of
/// finite length, maps well defined and compatible with the dynamics.
fn check(file: &FixtureFile, cfg: &RunConfig) -> Result<Outcome, Failure> {
    if cfg.format == Format::Csv {
        return Err(Failure::Usage(
            "`check` has no CSV form; use human or json".into(),
        ));
    }
    let mut rings = Vec::new();
    for r in &file.rings {
        rings.push(RingJson {
            name: r.name.clone(),
            presentation: r.presentation.to_string(),
            dim: r.presentation.dim()?,
        });
    }
    let mut endos = Vec::new();
    let mut systems = Vec::new();
    for e in &file.endos {
        let (json, sys) = check_endo(e, cfg)?;
        if let Some(sys) = sys {
            systems.push((e.name.clone(), e.ring.clone(), sys));
        }
        endos.push(json);
    }
    let mut maps = Vec::new();
    for m in &file.maps {
        maps.push(check_map(file, m, &systems)?);
    }
    let bad: Vec<String> = endos
        .iter()
        .filter(|e| !(e.well_defined && e.finite_length == "yes"))
        .map(|e| format!("endomorphism {}", e.name))
        .chain(
            maps.iter()
                .filter(|m| !m.ok)
                .map(|m| format!("map {}", m.name)),
        )
        .collect();
    let out = CheckJson {
        field: file.field.map(|f| f.characteristic()),
        ok: bad.is_empty(),
        rings,
        endos,
        maps,
    };
    let report = match cfg.format {
        Format::Json => json(&out),
        _ => check_human(&out),
    };
    let status = if bad.is_empty() {
        Status::Verified
    } else {
        Status::Invalid(format!("validation failed for {}", bad.join(", ")))
    };
    Ok(Outcome { report, status })
}

fn check_human(c: &CheckJson) -> String {
    let mut s = String::new();
    match c.field {
        Some(p) => writeln!(s, "field F_{p}").unwrap(),
        None => writeln!(s, "no declarations").unwrap(),
    }
    for r in &c.rings {
        writeln!(s, "ring {} = {} (dim {})", r.name, r.presentation, r.dim).unwrap();
    }
    for e in &c.endos {
        write!(
            s,
            "endo {} on {}: well defined {}, finite length {}",
            e.name,
            e.ring,
            if e.well_defined { "yes" } else { "no" },
            e.finite_length
        )
        .unwrap();
        if let Some(p) = &e.problem {
            write!(s, " ({p})").unwrap();
        }
        writeln!(s).unwrap();
    }
    for m in &c.maps {
        writeln!(
            s,
            "map {}: {} -> {}: {}",
            m.name,
            m.source,
            m.target,
            if m.ok { "ok" } else { "INVALID" }
        )
        .unwrap();
        if let Some(p) = &m.problem {
            writeln!(s, "  {p}").unwrap();
        }
        for p in &m.pairs {
            write!(
                s,
                "  with {} and {}: {}",
                p.phi,
                p.psi,
                if p.commutes {
                    "commutes"
                } else {
                    "does not commute"
                }
            )
            .unwrap();
            if let Some(f) = &p.flatness {
                write!(
                    s,
                    "; flatness advisory: dimension {} ({} + {} vs {}), pattern {}",
                    f.dimension_check, f.dim_source, f.dim_fiber, f.dim_target, f.pattern_check
                )
                .unwrap();
            }
            writeln!(s).unwrap();
        }
    }
    s
}

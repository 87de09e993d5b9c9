//! The `hopfian` command line.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::{bigopt, maximal_divisor, H1Structure, HomologyClass};
use crate::decide::{
    compare, decide_fields, decide_maps, sufficient_check, DecideError, DecideOptions,
};
use crate::extraction::{generic_preimage, preimage_link, ExtractionError, Genericity, PolyLink};
use crate::fields::{
    builtin, load_field, normalize, pontryagin_model, write_field, Builtin, BuiltinConfig,
    FieldError, Manifold, Model, SphereField, TubeChart, Vec3,
};
use crate::linking::LinkingError;
use crate::mesh::{load_mesh, max_tets_from_env, write_mesh, MeshError, Triangulation};
use crate::seifert::{
    construct, h1_of_seifert, realize_class, SeifertData, SeifertError, SeifertHomology,
};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_GENERICITY: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "hopfian",
    version,
    about = "Homotopy of maps from 3-manifolds to the 2-sphere"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// First homology of a mesh.
    Homology(HomologyArgs),
    /// Maximal divisor of a class given by its free coordinates.
    Divisor(DivisorArgs),
    /// Extract the preimage of a regular value.
    Preimage(PreimageArgs),
    /// Coincidence links of a pair with their classes and linking number.
    Compare(PairArgs),
    /// Full homotopy certificate for a pair.
    Decide(DecideArgs),
    /// Write a Pontryagin model field.
    Pontryagin(PontryaginArgs),
    /// Write the mesh and field of a builtin.
    Builtin(BuiltinArgs),
    /// Symbolic Seifert calculus.
    #[command(subcommand)]
    Seifert(SeifertCommand),
    /// Convert a link file between formats.
    Export(ExportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Obj,
    Vtk,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Perturbation angle for genericity retries.
    #[arg(long, default_value_t = 1e-2)]
    pub eps: f64,
    /// Lattice refinement of builtin meshes.
    #[arg(long, default_value_t = 2)]
    pub refine: u32,
    /// Pole pull of `s2s1_rot`.
    #[arg(long, default_value_t = 0.35)]
    pub pull: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the main output here instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MeshSource {
    #[arg(long)]
    pub mesh: Option<PathBuf>,
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Args, Debug)]
pub struct HomologyArgs {
    #[command(flatten)]
    pub source: MeshSource,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct DivisorArgs {
    /// Free coordinates, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub class: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct PreimageArgs {
    #[command(flatten)]
    pub source: MeshSource,
    #[arg(long)]
    pub field: Option<PathBuf>,
    /// Regular value `x,y,z`; drawn from the seed when absent.
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    #[arg(long)]
    pub mesh: Option<PathBuf>,
    #[arg(long)]
    pub field: Option<PathBuf>,
    #[arg(long)]
    pub builtin: Option<String>,
    #[arg(long)]
    pub field_b: Option<PathBuf>,
    #[arg(long)]
    pub builtin_b: Option<String>,
    /// Write C+ here (format from --link-format).
    #[arg(long)]
    pub plus_out: Option<PathBuf>,
    #[arg(long)]
    pub minus_out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub link_format: Format,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct DecideArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Treat the inputs as trivialized non-singular fields.
    #[arg(long)]
    pub fields: bool,
    /// Only run the one-sided sufficient test.
    #[arg(long, conflicts_with = "fields")]
    pub sufficient: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ManifoldName {
    S3,
    S2s1,
    T3,
}

#[derive(Args, Debug)]
pub struct PontryaginArgs {
    #[arg(long, value_enum)]
    pub manifold: ManifoldName,
    /// Class of the core in free coordinates, comma separated (empty on S3).
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub class: String,
    #[arg(long, allow_hyphen_values = true)]
    pub twists: i64,
    /// Also write the mesh.
    #[arg(long)]
    pub mesh_out: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct BuiltinArgs {
    pub name: String,
    #[arg(long)]
    pub mesh_out: PathBuf,
    #[arg(long)]
    pub field_out: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct SeifertArgs {
    #[arg(long, default_value_t = 0)]
    pub genus: u32,
    /// Exceptional fibers as `alpha,beta` pairs.
    #[arg(long, num_args = 0..)]
    pub fibers: Vec<String>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub b: i64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SeifertClassArgs {
    #[command(flatten)]
    pub data: SeifertArgs,
    /// Coordinates over `a1,b1,..,q1,..,h`, comma separated, or `0`.
    #[arg(long, allow_hyphen_values = true)]
    pub class: String,
}

#[derive(Subcommand, Debug)]
pub enum SeifertCommand {
    H1(SeifertArgs),
    Realize(SeifertClassArgs),
    Construct {
        #[command(flatten)]
        target: SeifertClassArgs,
        #[arg(long, allow_hyphen_values = true)]
        degree: BigInt,
    },
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[arg(long)]
    pub mesh: Option<PathBuf>,
    #[arg(long)]
    pub builtin: Option<String>,
    #[arg(long)]
    pub link: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Genericity(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Genericity(_) => EXIT_GENERICITY,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

impl From<MeshError> for CliError {
    fn from(e: MeshError) -> Self {
        invalid(e)
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        invalid(e)
    }
}

impl From<SeifertError> for CliError {
    fn from(e: SeifertError) -> Self {
        invalid(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        invalid(e)
    }
}

impl From<ExtractionError> for CliError {
    fn from(e: ExtractionError) -> Self {
        match e {
            ExtractionError::GenericityExhausted { .. } => CliError::Genericity(e.to_string()),
            _ => invalid(e),
        }
    }
}

impl From<LinkingError> for CliError {
    fn from(e: LinkingError) -> Self {
        match e {
            LinkingError::Extraction(x) => x.into(),
            _ => invalid(e),
        }
    }
}

impl From<DecideError> for CliError {
    fn from(e: DecideError) -> Self {
        match e {
            DecideError::Extraction(x) => x.into(),
            DecideError::Linking(x) => x.into(),
        }
    }
}

/// Parse `argv`, run and return the exit code. Output goes to `out`,
/// diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cmd: &Command, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Homology(a) => homology(a, out),
        Command::Divisor(a) => divisor(a, out),
        Command::Preimage(a) => preimage(a, out),
        Command::Compare(a) => compare_cmd(a, out),
        Command::Decide(a) => decide_cmd(a, out),
        Command::Pontryagin(a) => pontryagin(a, out),
        Command::Builtin(a) => builtin_cmd(a, out),
        Command::Seifert(s) => seifert(s, out),
        Command::Export(a) => export(a, out),
    }
}

fn emit(common_output: Option<&Path>, out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    match common_output {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn config(c: &Common) -> BuiltinConfig {
    BuiltinConfig {
        refine: c.refine,
        eps: c.pull,
        max_tets: max_tets_from_env(),
    }
}

fn genericity(c: &Common) -> Genericity {
    Genericity {
        seed: c.seed,
        eps: c.eps,
        ..Genericity::default()
    }
}

fn parse_builtin(name: &str) -> Result<Builtin, CliError> {
    name.parse()
        .map_err(|e: FieldError| CliError::Usage(e.to_string()))
}

enum Source {
    File(Triangulation),
    Builtin(Model, SphereField),
}

impl Source {
    fn mesh(&self) -> &Triangulation {
        match self {
            Source::File(t) => t,
            Source::Builtin(m, _) => m.mesh(),
        }
    }
}

fn source(mesh: Option<&Path>, name: Option<&str>, c: &Common) -> Result<Source, CliError> {
    match (mesh, name) {
        (Some(p), None) => Ok(Source::File(load_mesh(p)?)),
        (None, Some(n)) => {
            let b = parse_builtin(n)?;
            let (model, f) = builtin(&b, &config(c))?;
            Ok(Source::Builtin(model, f))
        }
        _ => Err(CliError::Usage(
            "give exactly one of --mesh and --builtin".into(),
        )),
    }
}

fn field_of(src: &Source, file: Option<&Path>) -> Result<SphereField, CliError> {
    match (src, file) {
        (Source::File(t), Some(p)) => Ok(load_field(t, p)?),
        (Source::Builtin(_, f), None) => Ok(f.clone()),
        (Source::File(_), None) => Err(CliError::Usage("--mesh needs --field".into())),
        (Source::Builtin(..), Some(_)) => Err(CliError::Usage(
            "--field cannot be combined with --builtin".into(),
        )),
    }
}

#[derive(Serialize)]
struct HomologyReport {
    vertices: usize,
    tets: usize,
    euler_characteristic: i64,
    free_rank: usize,
    #[serde(with = "crate::algebra::bigvec")]
    torsion: Vec<BigInt>,
    group: String,
}

fn homology(a: &HomologyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let src = source(
        a.source.mesh.as_deref(),
        a.source.builtin.as_deref(),
        &a.common,
    )?;
    let t = src.mesh();
    let h = H1Structure::new(t);
    let report = HomologyReport {
        vertices: t.vertex_count(),
        tets: t.tet_count(),
        euler_characteristic: t.euler_characteristic(),
        free_rank: h.free_rank(),
        torsion: h.torsion(),
        group: h.group().describe(),
    };
    let text = match a.common.format {
        Format::Text => format!("H1 = {}\n", report.group),
        Format::Json => json(&report),
        _ => return Err(CliError::Usage("homology supports json and text".into())),
    };
    emit(a.common.output.as_deref(), out, &text)
}

fn parse_ints(s: &str) -> Result<Vec<BigInt>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<BigInt>()
                .map_err(|_| CliError::Usage(format!("bad integer `{x}`")))
        })
        .collect()
}

fn divisor(a: &DivisorArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let free = parse_ints(&a.class)?;
    let c = HomologyClass::new(free, vec![], vec![]);
    let p = maximal_divisor(&c);
    let text = match a.format {
        Format::Text => format!("{p}\n"),
        Format::Json => {
            json(&serde_json::json!({ "class": c, "divisor": crate::algebra::big_to_json(&p) }))
        }
        _ => return Err(CliError::Usage("divisor supports json and text".into())),
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn link_text(link: &PolyLink, t: &Triangulation, f: Format) -> Result<String, CliError> {
    match f {
        Format::Json => {
            let mut s = link.to_json();
            s.push('\n');
            Ok(s)
        }
        Format::Obj => Ok(link.to_obj(t)),
        Format::Vtk => Ok(link.to_vtk(t)),
        Format::Text => Err(CliError::Usage(
            "links are written as json, obj or vtk".into(),
        )),
    }
}

fn parse_vec3(s: &str) -> Result<Vec3, CliError> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("bad number `{x}`")))
        })
        .collect::<Result<_, _>>()?;
    match v.as_slice() {
        [x, y, z]
            if x.is_finite() && y.is_finite() && z.is_finite() && (x * x + y * y + z * z) > 0.0 =>
        {
            Ok(normalize([*x, *y, *z]))
        }
        _ => Err(CliError::Usage(format!(
            "expected a nonzero vector x,y,z, got `{s}`"
        ))),
    }
}

fn preimage(a: &PreimageArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let src = source(
        a.source.mesh.as_deref(),
        a.source.builtin.as_deref(),
        &a.common,
    )?;
    let f = field_of(&src, a.field.as_deref())?;
    let t = src.mesh();
    let link = match &a.y {
        Some(y) => preimage_link(t, &f, parse_vec3(y)?)?,
        None => generic_preimage(t, &f, &genericity(&a.common))?.1,
    };
    emit(
        a.common.output.as_deref(),
        out,
        &link_text(&link, t, a.common.format)?,
    )
}

struct Pair {
    src: Source,
    f: SphereField,
    g: SphereField,
}

fn pair(a: &PairArgs) -> Result<Pair, CliError> {
    let src = source(a.mesh.as_deref(), a.builtin.as_deref(), &a.common)?;
    let f = field_of(&src, a.field.as_deref())?;
    let g = match (&src, a.field_b.as_deref(), a.builtin_b.as_deref()) {
        (Source::File(t), Some(p), None) => load_field(t, p)?,
        (Source::Builtin(model, _), None, Some(n)) => {
            parse_builtin(n)?.field(model, &config(&a.common))?
        }
        _ => {
            return Err(CliError::Usage(
                "the second map is --field-b with --mesh, or --builtin-b with --builtin".into(),
            ))
        }
    };
    Ok(Pair { src, f, g })
}

#[derive(Serialize)]
struct CompareReport {
    components_cplus: usize,
    components_cminus: usize,
    class_cplus: HomologyClass,
    class_cminus: HomologyClass,
    #[serde(with = "bigopt")]
    linking: Option<BigInt>,
    seed: u64,
    round: u32,
    coincidence_attempt: u32,
}

fn compare_cmd(a: &PairArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let p = pair(a)?;
    let t = p.src.mesh();
    let h = H1Structure::new(t);
    let opts = DecideOptions {
        genericity: genericity(&a.common),
    };
    let cmp = compare(t, &h, &p.f, &p.g, &opts)?;
    if let Some(path) = &a.plus_out {
        fs::write(path, link_text(&cmp.coincidence.plus, t, a.link_format)?)?;
    }
    if let Some(path) = &a.minus_out {
        fs::write(path, link_text(&cmp.coincidence.minus, t, a.link_format)?)?;
    }
    let report = CompareReport {
        components_cplus: cmp.coincidence.plus.component_count(),
        components_cminus: cmp.coincidence.minus.component_count(),
        class_cplus: cmp.class_plus,
        class_cminus: cmp.class_minus,
        linking: cmp.linking,
        seed: a.common.seed,
        round: cmp.round,
        coincidence_attempt: cmp.coincidence.attempt,
    };
    let text = match a.common.format {
        Format::Json => json(&report),
        Format::Text => format!(
            "C+: {} components, class {}\nC-: {} components, class {}\nlinking: {}\n",
            report.components_cplus,
            report.class_cplus,
            report.components_cminus,
            report.class_cminus,
            report
                .linking
                .as_ref()
                .map_or("undefined".to_string(), |l| l.to_string())
        ),
        _ => return Err(CliError::Usage("compare supports json and text".into())),
    };
    emit(a.common.output.as_deref(), out, &text)
}

fn decide_cmd(a: &DecideArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let p = pair(&a.pair)?;
    let t = p.src.mesh();
    let h = H1Structure::new(t);
    let common = &a.pair.common;
    let opts = DecideOptions {
        genericity: genericity(common),
    };
    let text = if a.sufficient {
        let v = sufficient_check(t, &h, &p.f, &p.g, &opts)?;
        match common.format {
            Format::Text => format!("{v:?}\n"),
            _ => json(&serde_json::json!({ "sufficient": v })),
        }
    } else {
        let cert = if a.fields {
            decide_fields(t, &h, &p.f, &p.g, &opts)?
        } else {
            decide_maps(t, &h, &p.f, &p.g, &opts)?
        };
        match common.format {
            Format::Text => format!(
                "{:?} (residue {} mod {})\n",
                cert.verdict,
                cert.residue
                    .as_ref()
                    .map_or("-".to_string(), |r| r.to_string()),
                cert.modulus
            ),
            Format::Json => cert.to_json(),
            _ => return Err(CliError::Usage("decide supports json and text".into())),
        }
    };
    emit(common.output.as_deref(), out, &text)
}

fn pontryagin(a: &PontryaginArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let manifold = match a.manifold {
        ManifoldName::S3 => Manifold::s3(a.common.refine),
        ManifoldName::S2s1 => Manifold::s2s1(a.common.refine),
        ManifoldName::T3 => Manifold::t3(a.common.refine),
    };
    let model = manifold.build(max_tets_from_env())?;
    let class: Vec<i64> = parse_ints(&a.class)?
        .iter()
        .map(|x| {
            i64::try_from(x).map_err(|_| CliError::Usage("class coordinate out of range".into()))
        })
        .collect::<Result<_, _>>()?;
    let chart = TubeChart::for_model(&model, &class)?;
    let f = pontryagin_model(model.mesh(), &chart, a.twists)?;
    if let Some(p) = &a.mesh_out {
        fs::write(p, write_mesh(model.mesh()))?;
    }
    emit(a.common.output.as_deref(), out, &write_field(&f))
}

fn builtin_cmd(a: &BuiltinArgs, _out: &mut dyn Write) -> Result<(), CliError> {
    let b = parse_builtin(&a.name)?;
    let (model, f) = builtin(&b, &config(&a.common))?;
    fs::write(&a.mesh_out, write_mesh(model.mesh()))?;
    fs::write(&a.field_out, write_field(&f))?;
    Ok(())
}

fn seifert_data(a: &SeifertArgs) -> Result<SeifertData, CliError> {
    let fibers = a
        .fibers
        .iter()
        .map(|s| {
            let v = parse_ints(s)?;
            match v.as_slice() {
                [x, y] => Ok((
                    i64::try_from(x).map_err(invalid)?,
                    i64::try_from(y).map_err(invalid)?,
                )),
                _ => Err(CliError::Usage(format!(
                    "fiber must be `alpha,beta`, got `{s}`"
                ))),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SeifertData::new(a.genus, fibers, a.b)?)
}

fn seifert_class(h: &SeifertHomology, s: &str) -> Result<HomologyClass, CliError> {
    let x = parse_ints(s)?;
    if x.len() == 1 && x[0] == BigInt::from(0) {
        return Ok(h.zero());
    }
    if x.len() != h.generator_count() {
        return Err(CliError::Usage(format!(
            "class needs {} coordinates over {}",
            h.generator_count(),
            h.generator_names().join(",")
        )));
    }
    Ok(h.classify(&x))
}

#[derive(Serialize)]
struct SeifertH1Report {
    generators: Vec<String>,
    relations: Vec<Vec<serde_json::Value>>,
    free_rank: usize,
    #[serde(with = "crate::algebra::bigvec")]
    torsion: Vec<BigInt>,
    group: String,
    orbit_bound: usize,
}

fn seifert(cmd: &SeifertCommand, out: &mut dyn Write) -> Result<(), CliError> {
    let text = match cmd {
        SeifertCommand::H1(a) => {
            let s = seifert_data(a)?;
            let h = h1_of_seifert(&s);
            let report = SeifertH1Report {
                generators: h.generator_names(),
                relations: (0..h.relations.rows())
                    .map(|i| {
                        h.relations
                            .row(i)
                            .iter()
                            .map(crate::algebra::big_to_json)
                            .collect()
                    })
                    .collect(),
                free_rank: h.group().free_rank(),
                torsion: h.group().torsion(),
                group: h.group().describe(),
                orbit_bound: crate::seifert::orbit_bound(&s),
            };
            match a.format {
                Format::Text => format!("H1 = {}\n", report.group),
                _ => json(&report),
            }
        }
        SeifertCommand::Realize(a) => {
            let s = seifert_data(&a.data)?;
            let h = h1_of_seifert(&s);
            realize_class(&s, &seifert_class(&h, &a.class)?)?.to_json()
        }
        SeifertCommand::Construct { target, degree } => {
            let s = seifert_data(&target.data)?;
            let h = h1_of_seifert(&s);
            construct(&s, &seifert_class(&h, &target.class)?, degree)?.to_json()
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn export(a: &ExportArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let src = source(a.mesh.as_deref(), a.builtin.as_deref(), &a.common)?;
    let t = src.mesh();
    let link = PolyLink::from_json(&fs::read_to_string(&a.link)?).map_err(invalid)?;
    link.validate(t).map_err(invalid)?;
    emit(
        a.common.output.as_deref(),
        out,
        &link_text(&link, t, a.common.format)?,
    )
}

//! Subcommands and their reports.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hkit_core::arrangement::{
    build_discriminant, check_simplicity, f_locus, ArrangementSpec, MultiplicityMode, WallKind,
};
use hkit_core::characterization::{classify_case, reconstruct_b, round_trip, CaseTag};
use hkit_core::hypertoric::{
    dimension_check, leaf_classification, presentation_with, Budget, HypertoricData, LeafDescriptor, Singularity,
};
use hkit_core::lattice::{gale_dual, smith_normal_form, unimodularity, UnimodularityMethod, UnimodularityVerdict};
use hkit_core::localmodel::{
    choose_deformation_line, default_basis_rows, deform_local_model, family_f_codimension, family_slice, local_model,
    verify_genericity, LocalModel,
};
use hkit_core::{Error, IntMatrix, Rat};
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::json::{
    divisor_value, int_value, matrix_value, parse_rat, rat_value, vector_value, DeformJson, DivisorJson,
    LocalModelJson, MatrixJson, SchemaError,
};
use crate::report::{ErrorInfo, Report, Timing};
use crate::svg::{fit_window, plot_arrangement};

pub const BUDGET_ENV: &str = "HKIT_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Gale,
    Check,
    Discriminant,
    Build,
    Reconstruct,
    Deform,
    LocalModel,
    RoundTrip,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Gale => "gale",
            Command::Check => "check",
            Command::Discriminant => "discriminant",
            Command::Build => "build",
            Command::Reconstruct => "reconstruct",
            Command::Deform => "deform",
            Command::LocalModel => "local-model",
            Command::RoundTrip => "round-trip",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Svg,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Path(PathBuf),
    Inline(String),
}

impl Input {
    /// Text starting with `{` is inline JSON, anything else a path.
    pub fn parse(arg: &str) -> Self {
        if arg.trim_start().starts_with('{') {
            Input::Inline(arg.to_string())
        } else {
            Input::Path(PathBuf::from(arg))
        }
    }
}

/// Where the enumeration budget came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BudgetSource {
    Default,
    Flag,
    Env,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub input: Input,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub degree_cap: Option<u32>,
    pub budget: Option<usize>,
    pub budget_source: BudgetSource,
    /// 0-based.
    pub basis_rows: Option<Vec<usize>>,
    pub shifts: Option<Vec<Rat>>,
}

impl JobSpec {
    pub fn new(command: Command, input: Input) -> Self {
        JobSpec {
            command,
            input,
            out: None,
            format: Format::Json,
            degree_cap: None,
            budget: None,
            budget_source: BudgetSource::Default,
            basis_rows: None,
            shifts: None,
        }
    }

    fn enumeration_budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(c) = self.budget {
            b.max_candidates = c;
        }
        if let Some(d) = self.degree_cap {
            b.max_degree = d;
        }
        b
    }
}

#[derive(Parser, Debug)]
#[command(name = "hkit", version, about = "Exact computations with hypertoric varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Subcommand, Debug)]
pub enum CliCommand {
    /// Gale dual A of B
    Gale(Common),
    /// Primitivity, rank, torsion and unimodularity of B
    Check(Common),
    /// Discriminant arrangement of B
    Discriminant(Common),
    /// Hilbert basis, presentation and leaves of Y(A,0)
    Build(Common),
    /// Matrix B from divisor data
    Reconstruct(Common),
    /// Deformation line and genericity checks
    Deform(Common),
    /// Local normal forms x1*x2 = x3^m
    LocalModel(Common),
    /// Divisor -> B -> discriminant, compared with the input
    RoundTrip(Common),
}

#[derive(Args, Debug)]
pub struct Common {
    /// Input JSON: a file path, or inline text starting with '{'
    #[arg(long = "in", value_name = "PATH|JSON")]
    pub input: String,
    /// Output file (default: standard output)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Largest degree of a Graver element explored
    #[arg(long)]
    pub degree_cap: Option<u32>,
    /// Critical-pair candidates explored before giving up
    #[arg(long)]
    pub budget: Option<usize>,
    /// Rows of B forming a Z-basis, 1-based, comma separated
    #[arg(long, value_delimiter = ',')]
    pub basis_rows: Option<Vec<usize>>,
    /// Shift constants a1,...,am, integers or p/q
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub shifts: Option<Vec<String>>,
}

/// Invalid command-line values, reported with exit status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

impl Cli {
    /// `env_budget` is the value of `HKIT_BUDGET`, if set; the flag wins over it.
    pub fn into_job(self, env_budget: Option<&str>) -> Result<JobSpec, UsageError> {
        let (command, c) = match self.command {
            CliCommand::Gale(c) => (Command::Gale, c),
            CliCommand::Check(c) => (Command::Check, c),
            CliCommand::Discriminant(c) => (Command::Discriminant, c),
            CliCommand::Build(c) => (Command::Build, c),
            CliCommand::Reconstruct(c) => (Command::Reconstruct, c),
            CliCommand::Deform(c) => (Command::Deform, c),
            CliCommand::LocalModel(c) => (Command::LocalModel, c),
            CliCommand::RoundTrip(c) => (Command::RoundTrip, c),
        };
        let mut job = JobSpec::new(command, Input::parse(&c.input));
        job.out = c.out;
        job.format = c.format;
        job.degree_cap = c.degree_cap;
        match (c.budget, env_budget) {
            (Some(b), _) => {
                job.budget = Some(b);
                job.budget_source = BudgetSource::Flag;
            }
            (None, Some(text)) => {
                let b = text.trim().parse().map_err(|_| UsageError(format!("{BUDGET_ENV}={text:?} is not a count")))?;
                job.budget = Some(b);
                job.budget_source = BudgetSource::Env;
            }
            (None, None) => {}
        }
        if let Some(rows) = c.basis_rows {
            if rows.contains(&0) {
                return Err(UsageError("--basis-rows are 1-based".into()));
            }
            job.basis_rows = Some(rows.into_iter().map(|i| i - 1).collect());
        }
        if let Some(shifts) = c.shifts {
            let parsed = shifts.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>, _>>();
            job.shifts = Some(parsed.map_err(|e| UsageError(format!("--shifts: {e}")))?);
        }
        Ok(job)
    }
}

/// Result of one job: exit status, the JSON report and, for `--format svg`,
/// the picture.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: i32,
    pub report: Report,
    pub svg: Option<String>,
}

impl Outcome {
    /// Text written to the output: the picture when one was drawn, the
    /// report otherwise.
    pub fn output(&self) -> String {
        match &self.svg {
            Some(s) => s.clone(),
            None => self.report.to_json(),
        }
    }
}

enum Failure {
    /// Exit status 1.
    Domain { code: String, message: String, notes: Vec<String> },
    /// Exit status 2.
    Input { code: &'static str, message: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let mut notes = Vec::new();
        if let Error::BudgetExceeded(b) = &e {
            notes.push(format!("partial Hilbert basis ({} elements): {}", b.partial.len(), join(&b.partial)));
        }
        Failure::Domain { code: e.code().to_string(), message: e.to_string(), notes }
    }
}

impl From<SchemaError> for Failure {
    fn from(e: SchemaError) -> Self {
        Failure::Input { code: "schema", message: e.to_string() }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Input { code: "schema", message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure::Input { code: "usage", message: message.into() }
}

struct Done {
    result: Value,
    notes: Vec<String>,
    svg: Option<String>,
}

impl Done {
    fn new(result: Value) -> Self {
        Done { result, notes: Vec::new(), svg: None }
    }
}

/// Runs one job, reading its input but writing nothing.
pub fn run(job: &JobSpec) -> Outcome {
    let start = Instant::now();
    let mut report = Report::new(job.command.name(), Value::Null);
    let outcome = read_input(&job.input).and_then(|input| {
        report.input = input.clone();
        dispatch(job, input)
    });
    let status = match outcome {
        Ok(done) => {
            report.result = Some(done.result);
            report.notes.extend(done.notes);
            report.timing = Some(Timing { elapsed_us: start.elapsed().as_micros() as u64 });
            return Outcome { status: 0, report, svg: done.svg };
        }
        Err(Failure::Domain { code, message, notes }) => {
            report.error = Some(ErrorInfo { code, message });
            report.notes.extend(notes);
            1
        }
        Err(Failure::Input { code, message }) => {
            report.error = Some(ErrorInfo { code: code.to_string(), message });
            2
        }
    };
    report.timing = Some(Timing { elapsed_us: start.elapsed().as_micros() as u64 });
    Outcome { status, report, svg: None }
}

fn read_input(input: &Input) -> Result<Value, Failure> {
    let text = match input {
        Input::Inline(s) => s.clone(),
        Input::Path(p) => std::fs::read_to_string(p)
            .map_err(|e| Failure::Input { code: "io", message: format!("{}: {e}", p.display()) })?,
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input { code: "parse", message: e.to_string() })
}

fn dispatch(job: &JobSpec, input: Value) -> Result<Done, Failure> {
    let svg_capable = matches!(job.command, Command::Discriminant | Command::Deform | Command::Reconstruct);
    if job.format == Format::Svg && !svg_capable {
        return Err(usage(format!("--format svg is not available for {}", job.command.name())));
    }
    if job.basis_rows.is_some() && job.command != Command::Deform {
        return Err(usage("--basis-rows only applies to deform"));
    }
    if job.shifts.is_some() && job.command != Command::LocalModel {
        return Err(usage("--shifts only applies to local-model"));
    }
    match job.command {
        Command::Gale => gale(matrix(input)?),
        Command::Check => check(matrix(input)?),
        Command::Discriminant => discriminant(matrix(input)?, job.format),
        Command::Build => build(matrix(input)?, job),
        Command::Reconstruct => reconstruct(input, job.format),
        Command::Deform => deform(input, job),
        Command::LocalModel => local_models(input, job.shifts.as_deref()),
        Command::RoundTrip => round_trip_cmd(input),
    }
}

fn matrix(input: Value) -> Result<IntMatrix, Failure> {
    let m: MatrixJson = serde_json::from_value(input)?;
    Ok(m.to_matrix()?)
}

fn divisor(input: Value) -> Result<hkit_core::characterization::DivisorData, Failure> {
    let d: DivisorJson = serde_json::from_value(input)?;
    Ok(d.to_divisor()??)
}

fn join(items: &[impl std::fmt::Display]) -> String {
    items.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
}

fn verdict_value(v: &UnimodularityVerdict) -> Value {
    let method = match v.method {
        UnimodularityMethod::MinorEnumeration => "minors",
        UnimodularityMethod::SmithFallback => "smith",
    };
    json!({ "unimodular": v.unimodular, "method": method })
}

fn kind_name(k: WallKind) -> &'static str {
    match k {
        WallKind::FirstKind => "first",
        WallKind::SecondKind => "second",
        WallKind::Unknown => "unknown",
    }
}

fn singularity_of(m: u32) -> Singularity {
    if m >= 2 {
        Singularity::A(m - 1)
    } else {
        Singularity::Smooth
    }
}

fn walls_value(arr: &ArrangementSpec) -> Value {
    let walls: Vec<Value> = arr
        .components()
        .iter()
        .map(|c| {
            json!({
                "normal": vector_value(c.hyperplane.normal()),
                "offset": rat_value(c.hyperplane.offset()),
                "mult": c.multiplicity,
                "kind": kind_name(c.kind),
                "singularity": singularity_of(c.multiplicity).to_string(),
            })
        })
        .collect();
    json!({ "n": arr.dim(), "walls": walls })
}

fn leaves_value(leaves: &[LeafDescriptor]) -> Value {
    Value::Array(
        leaves
            .iter()
            .map(|l| {
                json!({
                    "normal": vector_value(&l.normal),
                    "mult": l.multiplicity,
                    "singularity": l.singularity.to_string(),
                    "kind": kind_name(l.kind),
                })
            })
            .collect(),
    )
}

fn case_value(case: &CaseTag) -> Value {
    match case {
        CaseTag::SmoothAffineSpace => json!({ "tag": "smooth_affine_space" }),
        CaseTag::Hypertoric => json!({ "tag": "hypertoric" }),
        CaseTag::Rejected(reason) => json!({ "tag": "rejected", "reason": reason }),
    }
}

const SIGN_NOTE: &str = "normals sign-normalized: first nonzero coordinate positive";
const GROUP_NOTE: &str = "parallel rows of B grouped into one wall whose multiplicity is the group size";
const GALE_NOTE: &str = "A is the Hermite normal form basis of the left kernel of B";

fn gale(b: IntMatrix) -> Result<Done, Failure> {
    let a = gale_dual(&b)?;
    let mut done = Done::new(json!({
        "a": matrix_value(&a),
        "b_unimodular": verdict_value(&unimodularity(&b)),
        "a_unimodular": verdict_value(&unimodularity(&a)),
    }));
    done.notes.push(GALE_NOTE.into());
    if b.rows() == b.cols() {
        done.notes.push("N = n: A is the empty matrix".into());
    }
    Ok(done)
}

fn check(b: IntMatrix) -> Result<Done, Failure> {
    let primitive: Vec<bool> =
        b.iter_rows().map(|r| hkit_core::LatticeVector::new(r.to_vec()).is_primitive()).collect();
    let snf = smith_normal_form(&b);
    let case = match classify_case(&b) {
        Ok(c) => case_value(&c),
        Err(e) => json!({ "tag": "unclassified", "reason": e.to_string(), "code": e.code() }),
    };
    Ok(Done::new(json!({
        "rows": b.rows(),
        "cols": b.cols(),
        "primitive_rows": primitive,
        "rank": snf.rank(),
        "invariant_factors": snf.invariant_factors.iter().map(int_value).collect::<Vec<_>>(),
        "torsion_free": snf.torsion_free(),
        "unimodular": verdict_value(&unimodularity(&b)),
        "case": case,
    })))
}

fn discriminant(b: IntMatrix, format: Format) -> Result<Done, Failure> {
    let arr = build_discriminant(&b, MultiplicityMode::GroupParallel)?;
    let mut done = Done::new(json!({ "discriminant": walls_value(&arr), "degree": arr.degree() }));
    done.notes.push(SIGN_NOTE.into());
    done.notes.push(GROUP_NOTE.into());
    if format == Format::Svg {
        done.svg = Some(plot(&arr)?);
    }
    Ok(done)
}

fn plot(arr: &ArrangementSpec) -> Result<String, Failure> {
    plot_arrangement(arr, &fit_window(arr)).map_err(|e| Failure::Domain {
        code: e.code().into(),
        message: e.to_string(),
        notes: Vec::new(),
    })
}

fn build(b: IntMatrix, job: &JobSpec) -> Result<Done, Failure> {
    let h = HypertoricData::new(b.clone())?;
    let budget = job.enumeration_budget();
    let source = match job.budget_source {
        BudgetSource::Default => "default",
        BudgetSource::Flag => "--budget",
        BudgetSource::Env => BUDGET_ENV,
    };
    let budget_note =
        format!("enumeration budget {} candidates ({source}), degree cap {}", budget.max_candidates, budget.max_degree);
    let pres = presentation_with(&h, budget).map_err(|e| {
        let mut f = Failure::from(e);
        if let Failure::Domain { notes, .. } = &mut f {
            notes.insert(0, budget_note.clone());
        }
        f
    })?;
    let reduced = pres.reduce(h.b());
    let dim = dimension_check(&h, &pres.generators);
    let arr = build_discriminant(h.b(), MultiplicityMode::GroupParallel)?;
    let simplicity = check_simplicity(&arr);
    let locus = f_locus(&arr);
    let relations: Vec<String> = reduced.relations.iter().map(|r| reduced.render_relation(r)).collect();
    let mut done = Done::new(json!({
        "a": matrix_value(h.a()),
        "hilbert_basis": pres.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "binomials": pres.binomials.len(),
        "reduced": {
            "generators": reduced.pure_generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "sigma": reduced.torus_rank,
            "relations": relations,
            "klein": reduced.klein_form(),
        },
        "dimension": { "group_rank": dim.group_rank, "moment_rank": dim.moment_rank, "dimension": dim.dimension },
        "leaves": leaves_value(&leaf_classification(&h)),
        "discriminant": walls_value(&arr),
        "simplicity": {
            "empty_intersections": simplicity.empty_intersections,
            "basis_extension": simplicity.basis_extension,
            "passes": simplicity.passes(),
        },
        "f_locus_codimension": locus.codimension(),
        "family_f_codimension": family_f_codimension(&h),
    }));
    done.notes.push(budget_note);
    done.notes.push(format!(
        "relations searched up to degree {}; the presentation is not guaranteed minimal",
        pres.degree_bound
    ));
    if locus.truncated || simplicity.truncated {
        done.notes.push("flat enumeration truncated to pairwise intersections".into());
    }
    done.notes.push("generic points chosen by deterministic prime-window sampling".into());
    Ok(done)
}

fn reconstruct(input: Value, format: Format) -> Result<Done, Failure> {
    let d = divisor(input)?;
    let b = reconstruct_b(&d);
    let case = classify_case(&b)?;
    let mut done = Done::new(json!({ "b": matrix_value(&b), "case": case_value(&case), "divisor": divisor_value(&d) }));
    done.notes.push(SIGN_NOTE.into());
    done.notes.push("rows of multiplicity >= 2 first, each block in colexicographic order".into());
    if format == Format::Svg {
        done.svg = Some(plot(&d.to_arrangement())?);
    }
    Ok(done)
}

fn deform(input: Value, job: &JobSpec) -> Result<Done, Failure> {
    let spec: DeformJson = serde_json::from_value(input)?;
    let h = HypertoricData::new(spec.matrix.to_matrix()?)?;
    let big_n = h.num_coordinates();
    let seeds = match &spec.offsets {
        Some(v) => v.iter().map(|r| r.to_rat()).collect::<Result<Vec<_>, _>>()?,
        None => vec![Rat::zero(); big_n],
    };
    let rows = match &job.basis_rows {
        Some(r) => r.clone(),
        None => default_basis_rows(&h)?,
    };
    let line = choose_deformation_line(&h, &rows, &seeds)?;
    let check = verify_genericity(&h, &line);
    let slice = family_slice(&h, &line, &Rat::one())?;
    let mut done = Done::new(json!({
        "basis_rows": line.basis_rows.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "offsets": line.offsets.iter().map(rat_value).collect::<Vec<_>>(),
        "direction": line.direction.iter().map(rat_value).collect::<Vec<_>>(),
        "genericity": {
            "empty_intersection": check.empty_intersection,
            "degenerates_at_zero": check.degenerates_at_zero,
            "offsets_nonzero": check.offsets_nonzero,
            "distinct_walls": check.distinct_walls,
            "normalized": check.normalized,
            "vacuous": check.vacuous,
            "passes": check.passes(),
        },
        "slice_t1": walls_value(&slice),
    }));
    done.notes.push("basis rows are 1-based".into());
    if line.normalized {
        done.notes.push("nonzero seed offsets on basis rows were set to zero".into());
    }
    if line.adjusted {
        done.notes.push("seed offsets failed the genericity checks; non-basis offsets replaced by 1, 2, 3, ...".into());
    }
    if line.is_empty() {
        done.notes.push("N = n: the deformation base is a point".into());
    }
    if job.format == Format::Svg {
        done.svg = Some(plot(&slice)?);
    }
    Ok(done)
}

fn model_value(model: &LocalModel) -> Value {
    json!({
        "m": model.multiplicity(),
        "n": model.torus_rank(),
        "equation": model.render_equation(),
        "singularity": singularity_of(model.multiplicity()).to_string(),
        "moment_coordinates": model.moment_coordinates(),
        "symplectic_form": model.symplectic_form(),
    })
}

fn local_models(input: Value, shifts: Option<&[Rat]>) -> Result<Done, Failure> {
    if input.get("rows").is_some() {
        if shifts.is_some() {
            return Err(usage("--shifts needs a single model given as {\"m\", \"n\"}"));
        }
        let h = HypertoricData::new(matrix(input)?)?;
        let models = leaf_classification(&h)
            .iter()
            .map(|leaf| {
                let model = local_model(leaf, h.torus_rank())?;
                let mut v = model_value(&model);
                v["normal"] = vector_value(&leaf.normal);
                Ok(v)
            })
            .collect::<Result<Vec<_>, Error>>()?;
        return Ok(Done::new(json!({ "models": models })));
    }
    let spec: LocalModelJson = serde_json::from_value(input)?;
    let model = LocalModel::new(spec.m, spec.n)?;
    let mut result = model_value(&model);
    if let Some(shifts) = shifts {
        let deformed = deform_local_model(&model, shifts)?;
        result["deformed"] = json!({
            "shifts": shifts.iter().map(rat_value).collect::<Vec<_>>(),
            "equation": deformed.render_equation(),
            "factored": deformed.render_factored(),
            "at_zero": format!("x1'*x2' = {}", deformed.at_zero().render()),
            "singular_points_t1": deformed.discriminant_points(&Rat::one()).iter().map(rat_value).collect::<Vec<_>>(),
        });
    }
    Ok(Done::new(result))
}

fn round_trip_cmd(input: Value) -> Result<Done, Failure> {
    let d = divisor(input)?;
    let r = round_trip(&d)?;
    let mut done = Done::new(json!({
        "case": case_value(&r.case),
        "b": matrix_value(&r.b),
        "a": matrix_value(&r.a),
        "b_unimodular": verdict_value(&r.b_unimodular),
        "a_unimodular": verdict_value(&r.a_unimodular),
        "discriminant": walls_value(&r.discriminant),
        "equal": r.equal,
        "leaves": r.leaves.as_deref().map(leaves_value),
    }));
    done.notes.push(SIGN_NOTE.into());
    done.notes.extend(r.warnings);
    Ok(done)
}

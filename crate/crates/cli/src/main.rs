use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use contact_cuts::angle::parse_pair;
use contact_cuts::classify::overtwisted_disks;
use contact_cuts::standard::lens_spec;
use contact_cuts::report::{
    commute_records, float, homotopy_record, overtwisted_record, profile_record, witness_record, with_lens,
    DEFAULT_LENS_TABLE,
};
use contact_cuts::{
    cc_count, cc_profile, check_cut_symplectization_commute, classify_lens, detect_overtwisted, distinguish,
    homotopy_certificate, read_spec, reproduce_paper, slice_by_ray, Angle, CutSpec, Diagnostic, Direction,
    DistinguishMode, Format, InvariantContactForm, ParsedInput, Record, Report,
};

#[derive(Parser)]
#[command(name = "contact-cut", version, about = "Exact contact cuts of T^2-invariant forms on T^2 x I")]
struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a spec file and run the contact and cut checks.
    Check { spec: PathBuf },
    /// Classify the cut space as S3, S1xS2 or a lens space.
    Cut { spec: PathBuf },
    /// Count components of the preimage of the ray through a direction.
    Invariants {
        spec: PathBuf,
        #[arg(long, value_name = "M,N", allow_hyphen_values = true)]
        direction: String,
    },
    /// The component count as a step function of the ray direction.
    Profile { spec: PathBuf },
    /// Look for a witness that two cuts are not equivariantly contactomorphic.
    Distinguish {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        mod_gl2z: bool,
    },
    /// Search the capping family of disks for an overtwisted one.
    Overtwisted {
        spec: PathBuf,
        /// List every disk of the family, not just the first.
        #[arg(long)]
        all: bool,
    },
    /// Build a homotopy of plane fields between two cuts.
    Homotopy { a: PathBuf, b: PathBuf },
    /// Cut a line-type form along the intervals where the moment of ETA is nonnegative.
    Slice {
        spec: PathBuf,
        #[arg(long, value_name = "M,N", allow_hyphen_values = true)]
        eta: String,
        /// Bounds on phi as angle literals, e.g. `-1,0;-2 -1,0;1` for [-3pi, 3pi].
        #[arg(long, num_args = 2, value_names = ["A0", "A1"], allow_hyphen_values = true)]
        window: Vec<String>,
    },
    /// Check that cutting commutes with symplectization on moment data.
    SymplectizationCheck { spec: PathBuf },
    /// Regenerate the tables of examples.
    ReproducePaper {
        #[arg(long, default_value_t = 5)]
        kmax: u32,
        /// Lens parameters K,L; repeatable. Defaults to 1,1 2,1 1,2 2,3.
        #[arg(long = "lens", value_name = "K,L", allow_hyphen_values = true)]
        lens: Vec<String>,
    },
}

/// A failed command: message and exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Diagnostic> for Failure {
    fn from(d: Diagnostic) -> Self {
        Failure { code: d.exit_code() as u8, message: d.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn semantic(message: impl Into<String>) -> Failure {
    Failure { code: 3, message: message.into() }
}

struct Input {
    parsed: ParsedInput,
    bytes: Vec<u8>,
}

fn load(path: &Path) -> Result<Input, Failure> {
    let bytes = std::fs::read(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let parsed = read_spec(path).map_err(|d| Failure::from(d).prefixed(path))?;
    Ok(Input { parsed, bytes })
}

impl Failure {
    fn prefixed(mut self, path: &Path) -> Self {
        self.message = format!("{}: {}", path.display(), self.message);
        self
    }
}

fn load_cut(path: &Path) -> Result<(CutSpec, Vec<u8>), Failure> {
    let input = load(path)?;
    match input.parsed {
        ParsedInput::Cut(spec) => Ok((spec, input.bytes)),
        ParsedInput::Line(_) => Err(semantic(format!(
            "{}: this command needs a cut (collapse0 and collapse1), got a line-type form",
            path.display()
        ))),
    }
}

fn load_line(path: &Path) -> Result<(InvariantContactForm, Vec<u8>), Failure> {
    let input = load(path)?;
    match input.parsed {
        ParsedInput::Line(form) => Ok((form, input.bytes)),
        ParsedInput::Cut(_) => Err(semantic(format!(
            "{}: slicing needs a line-type form without collapse keys",
            path.display()
        ))),
    }
}

fn direction(s: &str, flag: &str) -> Result<Direction, Failure> {
    let (x, y) = parse_pair(s).map_err(|e| usage(format!("--{flag}: {e}")))?;
    Direction::new(x, y).map_err(|e| usage(format!("--{flag}: {e}")))
}

fn form_record(spec_form: &InvariantContactForm) -> Record {
    let (t0, t1) = spec_form.domain();
    let sweep = spec_form.sweep();
    Record::new("form")
        .with("domain", format!("[{t0}, {t1}]"))
        .with("phi(start)", spec_form.phi().start())
        .with("phi(end)", spec_form.phi().end())
        .with("sweep", format!("{sweep} ({} rad)", float(sweep.to_f64())))
        .with("contact", "yes")
        .with("orientation", spec_form.orientation())
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let report = match &cli.command {
        Command::Check { spec } => {
            let input = load(spec)?;
            let mut report = Report::new(echo, &input.bytes);
            report.push(form_record(input.parsed.form()));
            match &input.parsed {
                ParsedInput::Cut(cut) => report.push(
                    Record::new("cut")
                        .with("valid", "yes")
                        .with("collapse0", format!("({})", cut.v0()))
                        .with("collapse1", format!("({})", cut.v1())),
                ),
                ParsedInput::Line(_) => report.push(Record::new("line").with("collapse", "none")),
            }
            report
        }
        Command::Cut { spec } => {
            let (cut, bytes) = load_cut(spec)?;
            let d = classify_lens(&cut);
            let mut report = Report::new(echo, &bytes);
            report.push(
                with_lens(Record::new("lens"), &d)
                    .with("raw_image", format!("({},{})", d.raw_image.0, d.raw_image.1)),
            );
            report
        }
        Command::Invariants { spec, direction: dir } => {
            let xi = direction(dir, "direction")?;
            let (cut, bytes) = load_cut(spec)?;
            let mut report = Report::new(echo, &bytes);
            report.push(Record::new("invariants").with(format!("cc({xi})"), cc_count(&cut, xi)));
            report
        }
        Command::Profile { spec } => {
            let (cut, bytes) = load_cut(spec)?;
            let mut report = Report::new(echo, &bytes);
            report.push(profile_record(&cc_profile(&cut)));
            report
        }
        Command::Distinguish { a, b, mod_gl2z } => {
            let (sa, mut bytes) = load_cut(a)?;
            let (sb, bb) = load_cut(b)?;
            bytes.extend(bb);
            let mode = if *mod_gl2z { DistinguishMode::ModuloGl2z } else { DistinguishMode::FixedAction };
            let w = distinguish(&sa, &sb, mode);
            let mut record = witness_record(w.as_ref(), mode);
            if let Some(w) = &w {
                record = record.with("verified", w.verify(&sa, &sb));
            }
            let mut report = Report::new(echo, &bytes);
            report.push(record);
            report
        }
        Command::Overtwisted { spec, all } => {
            let (cut, bytes) = load_cut(spec)?;
            let mut report = Report::new(echo, &bytes);
            if *all {
                for c in overtwisted_disks(&cut) {
                    report.push(overtwisted_record(Some(&c)).with("verified", c.verify(&cut)));
                }
            } else {
                let c = detect_overtwisted(&cut);
                let verified = c.as_ref().map_or(true, |c| c.verify(&cut));
                report.push(overtwisted_record(c.as_ref()).with("verified", verified));
            }
            report
        }
        Command::Homotopy { a, b } => {
            let (sa, mut bytes) = load_cut(a)?;
            let (sb, bb) = load_cut(b)?;
            bytes.extend(bb);
            let h = homotopy_certificate(&sa, &sb).map_err(|e| semantic(e.to_string()))?;
            let mut report = Report::new(echo, &bytes);
            report.push(homotopy_record(&h));
            report
        }
        Command::Slice { spec, eta, window } => {
            let eta = direction(eta, "eta")?;
            let w: Vec<Angle> = window
                .iter()
                .map(|s| s.parse::<Angle>().map_err(|e| usage(format!("--window: {e}"))))
                .collect::<Result<_, _>>()?;
            let (form, bytes) = load_line(spec)?;
            let pieces = slice_by_ray(&form, eta, (w[0], w[1])).map_err(|e| semantic(e.to_string()))?;
            let mut report = Report::new(echo, &bytes);
            report.push(Record::new("slice").with("eta", format!("({eta})")).with("pieces", pieces.len()));
            for (i, piece) in pieces.iter().enumerate() {
                let ot = if detect_overtwisted(piece).is_some() { "yes" } else { "none-found" };
                report.push(
                    with_lens(Record::new("piece").with("index", i), &classify_lens(piece))
                        .with("phi", format!("[{}, {}]", piece.form().phi().start(), piece.form().phi().end()))
                        .with("overtwisted", ot),
                );
            }
            report
        }
        Command::SymplectizationCheck { spec } => {
            let (cut, bytes) = load_cut(spec)?;
            let check = check_cut_symplectization_commute(&cut);
            let mut report = Report::new(echo, &bytes);
            report.records.extend(commute_records(&check));
            if !check.all_passed() {
                return Err(semantic(format!("symplectization check failed:\n{}", report.to_text())));
            }
            report
        }
        Command::ReproducePaper { kmax, lens } => {
            if *kmax < 1 {
                return Err(usage("--kmax must be at least 1"));
            }
            let table: Vec<(i64, i64)> = if lens.is_empty() {
                DEFAULT_LENS_TABLE.to_vec()
            } else {
                lens.iter()
                    .map(|s| parse_pair(s).map_err(|e| usage(format!("--lens: {e}"))))
                    .collect::<Result<_, _>>()?
            };
            for &(k, l) in &table {
                lens_spec(k, l, 1).map_err(|e| semantic(format!("--lens {k},{l}: {e}")))?;
            }
            let mut report = reproduce_paper(*kmax, &table);
            report.command = echo;
            report
        }
    };
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.emit(format));
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

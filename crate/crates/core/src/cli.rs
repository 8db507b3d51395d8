//! Command-line front end.
//!
//! Exit statuses: 0 success, 1 other failure, 2 usage, 3 key range,
//! 4 codec or file I/O, 5 image dimensions.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{analyze, AnalysisReport};
use crate::cipher::{decrypt, encrypt, CipherConfig, Level};
use crate::error::Error;
use crate::image::Image;
use crate::keystream::CipherKeys;
use crate::permutations::{as_permutation, BlockGrid, Direction, Stage};
use crate::pnm::{load_image, save_image};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_KEY_RANGE: i32 = 3;
pub const EXIT_CODEC: i32 = 4;
pub const EXIT_DIMENSIONS: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "imgcipher", version, about = "Multilevel chaotic image encryption for PGM/PPM files")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Encrypt a P5/P6 image.
    Encrypt(CipherArgs),
    /// Decrypt an image produced by `encrypt` with the same keys and options.
    Decrypt(CipherArgs),
    /// Print entropy, adjacent-pixel correlation and histogram statistics per channel.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Args)]
pub struct CipherArgs {
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    #[arg(long = "out", value_name = "PATH")]
    pub output: PathBuf,
    /// Logistic-map seed in (0, 1). Parsed to the nearest binary64, which is
    /// the effective key: strings that parse to the same double are the same key.
    #[arg(long = "key-a", value_name = "DECIMAL", allow_hyphen_values = true)]
    pub key_a: String,
    /// Logistic-map parameter in (3.5, 4), parsed the same way as --key-a.
    #[arg(long = "key-k", value_name = "DECIMAL", allow_hyphen_values = true)]
    pub key_k: String,
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long, value_enum, default_value_t = LevelArg::Full)]
    pub level: LevelArg,
}

#[derive(Debug, Args)]
pub struct ShapeArgs {
    /// Block side length in pixels.
    #[arg(long, default_value_t = 16)]
    pub block: usize,
    /// Arnold Cat iterations per block.
    #[arg(long = "arnold-iters", default_value_t = 1)]
    pub arnold_iters: u32,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub report: ReportFormat,
    /// Also report the block position entropy of this shuffle stage applied
    /// to each channel, on the --block grid.
    #[arg(long = "position-stage", value_enum)]
    pub position_stage: Option<StageArg>,
    #[command(flatten)]
    pub shape: ShapeArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Full,
    Basic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StageArg {
    Identity,
    RowShift,
    ColShift,
    Arnold,
    Distribute,
}

impl StageArg {
    fn stage(self, shape: &ShapeArgs) -> Stage {
        let direction = Direction::Forward;
        match self {
            StageArg::Identity => Stage::Identity,
            StageArg::RowShift => Stage::RowShift(direction),
            StageArg::ColShift => Stage::ColShift(direction),
            StageArg::Arnold => Stage::Arnold {
                block: shape.block,
                iterations: shape.arnold_iters,
                direction,
            },
            StageArg::Distribute => Stage::Distribute {
                block: shape.block,
                direction,
            },
        }
    }
}

pub fn exit_status(error: &Error) -> i32 {
    match error {
        Error::KeyRange { .. } => EXIT_KEY_RANGE,
        Error::KeyParse { .. } | Error::InvalidConfig(_) => EXIT_USAGE,
        Error::Codec(_) | Error::Io { .. } => EXIT_CODEC,
        Error::NotDivisible { .. } => EXIT_DIMENSIONS,
        _ => EXIT_FAILURE,
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return status;
        }
    };
    match execute(&cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "imgcipher: {e}");
            exit_status(&e)
        }
    }
}

fn execute(command: &Command, out: &mut dyn Write) -> Result<(), Error> {
    match command {
        Command::Encrypt(args) => transform(args, "encrypted", encrypt, out),
        Command::Decrypt(args) => transform(args, "decrypted", decrypt, out),
        Command::Analyze(args) => run_analyze(args, out),
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Error> {
    out.write_all(text.as_bytes())
        .map_err(|e| Error::Io { path: "<stdout>".into(), source: e })
}

fn transform(
    args: &CipherArgs,
    verb: &str,
    f: fn(&Image, &CipherKeys, &CipherConfig) -> crate::Result<Image>,
    out: &mut dyn Write,
) -> Result<(), Error> {
    let keys = CipherKeys::parse(&args.key_a, &args.key_k)?;
    let config = CipherConfig {
        block: args.shape.block,
        arnold_iterations: args.shape.arnold_iters,
        level: match args.level {
            LevelArg::Full => Level::Full,
            LevelArg::Basic => Level::Basic,
        },
    };
    config.validate()?;
    let image = load_image(&args.input)?;
    let result = f(&image, &keys, &config)?;
    save_image(&result, &args.output)?;
    write_out(
        out,
        &format!(
            "{verb} {} -> {} ({}x{}, {} channel(s), level {})\n",
            args.input.display(),
            args.output.display(),
            image.width(),
            image.height(),
            image.channels().count(),
            match args.level {
                LevelArg::Full => "full",
                LevelArg::Basic => "basic",
            }
        ),
    )
}

#[derive(Serialize)]
struct ChannelReport<'a> {
    channel: usize,
    #[serde(flatten)]
    report: &'a AnalysisReport,
}

fn run_analyze(args: &AnalyzeArgs, out: &mut dyn Write) -> Result<(), Error> {
    let image = load_image(&args.input)?;
    let mut reports = Vec::new();
    for plane in image.split_channels() {
        let report = match args.position_stage {
            None => analyze(&plane, None)?,
            Some(stage) => {
                let grid = BlockGrid::for_image(&plane, args.shape.block)?;
                let perm = as_permutation(&stage.stage(&args.shape), &plane)?;
                analyze(&plane, Some((&perm, &grid)))?
            }
        };
        reports.push(report);
    }

    let mut text = String::new();
    match args.report {
        ReportFormat::Text => {
            let fmt = |c: Option<f64>| c.map_or_else(|| "undefined".into(), |r| format!("{r:.6}"));
            text.push_str("channel\tentropy\thorizontal_correlation\tvertical_correlation\n");
            for (i, r) in reports.iter().enumerate() {
                text.push_str(&format!(
                    "{i}\t{:.6}\t{}\t{}\n",
                    r.entropy_bits,
                    fmt(r.corr_horizontal),
                    fmt(r.corr_vertical)
                ));
            }
            for (i, r) in reports.iter().enumerate() {
                text.push_str(&format!("\n[channel {i}]\n{}", r.to_text()));
            }
        }
        ReportFormat::Structured => {
            for (channel, report) in reports.iter().enumerate() {
                let line = serde_json::to_string(&ChannelReport { channel, report })
                    .expect("report serializes");
                text.push_str(&line);
                text.push('\n');
            }
        }
    }
    write_out(out, &text)
}

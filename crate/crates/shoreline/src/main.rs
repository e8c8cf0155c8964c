use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use shoreline::config::{parse_hsv, parse_morph_order, ConfigOverrides};
use shoreline::core::{AreaMode, HsvRange, MorphOrder, OperatorKind};
use shoreline::{run_compare, run_pipeline, write_comparison, write_diagnostics, write_outputs, CompareOptions};

/// Extract water-body boundaries from satellite map fragments.
#[derive(Parser)]
#[command(name = "shoreline", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and write regions.csv, contours.csv and contours.txt.
    Extract(ExtractArgs),
    /// Compare the Sobel, Roberts and Prewitt operators on a fragment.
    Compare(CompareArgs),
}

#[derive(Args)]
struct ExtractArgs {
    /// `key = value` config file; flags override its settings.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Map fragment (PNG, JPEG, BMP or TIFF)
    #[arg(long)]
    image: Option<PathBuf>,
    /// Control-point binding file.
    #[arg(long)]
    binding: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Edge operator (default: sobel).
    #[arg(long, value_parser = parse_operator)]
    operator: Option<OperatorKind>,
    /// h_lo,h_hi,s_lo,s_hi,v_lo,v_hi with hue as a fraction of the circle.
    #[arg(long, value_parser = parse_hsv, allow_hyphen_values = true)]
    hsv: Option<HsvRange>,
    /// Side of the square structuring element (odd).
    #[arg(long)]
    se: Option<usize>,
    /// dilate_first (default) or erode_first
    #[arg(long, value_parser = parse_morph_order)]
    morph_order: Option<MorphOrder>,
    /// Regions smaller than this many pixels are dropped.
    #[arg(long)]
    min_area: Option<usize>,
    /// Gradient magnitude above which a pixel counts as an edge (default: 0)
    #[arg(long)]
    edge_threshold: Option<f64>,
    /// faithful: area_km = area_px * KP; corrected (default): km^2 per pixel.
    #[arg(long, value_parser = parse_area_mode)]
    area_mode: Option<AreaMode>,
    /// Also write the HSV, cleaned and edge masks as PNG.
    #[arg(long)]
    diagnostics: bool,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    image: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_parser = parse_hsv)]
    hsv: Option<HsvRange>,
    /// Run morphological cleanup before comparing.
    #[arg(long)]
    clean: bool,
    #[arg(long, default_value_t = 3)]
    se: usize,
    #[arg(long, default_value_t = 50)]
    min_area: usize,
}

fn parse_operator(s: &str) -> Result<OperatorKind, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_area_mode(s: &str) -> Result<AreaMode, String> {
    s.parse()
}

fn extract(args: ExtractArgs) -> anyhow::Result<()> {
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            ConfigOverrides::parse(&text)?
        }
        None => ConfigOverrides::default(),
    };
    let flags = ConfigOverrides {
        image_path: args.image,
        binding_path: args.binding,
        output_dir: args.out,
        hsv_range: args.hsv,
        se_size: args.se,
        morph_order: args.morph_order,
        min_area: args.min_area,
        operator: args.operator,
        edge_threshold: args.edge_threshold,
        area_mode: args.area_mode,
        emit_diagnostics: args.diagnostics.then_some(true),
    };
    let cfg = file.merge(flags).into_config()?;

    let report = run_pipeline(&cfg)?;
    write_outputs(&report, &cfg.output_dir)?;
    write_diagnostics(&report, &cfg.output_dir)?;

    for t in &report.stage_timings {
        eprintln!("{} ({}): {:.3} ms", t.stage, t.stage.name(), t.elapsed.as_secs_f64() * 1e3);
    }
    if report.no_regions_found() {
        eprintln!("NoRegionsFound: the cleaned mask is empty; wrote empty outputs");
    }
    println!(
        "{} region(s), {} contour point(s) -> {}",
        report.regions.len(),
        report.geo_contours.iter().map(Vec::len).sum::<usize>(),
        cfg.output_dir.display()
    );
    Ok(())
}

fn compare(args: CompareArgs) -> anyhow::Result<()> {
    let opts = CompareOptions {
        hsv_range: args.hsv.unwrap_or_default(),
        clean: args.clean,
        se_size: args.se,
        min_area: args.min_area,
        ..CompareOptions::default()
    };
    let cmp = run_compare(&args.image, &opts)?;
    write_comparison(&cmp, &args.out)?;
    for e in &cmp.entries {
        println!(
            "{:<8} edges={:<8} mean={:.3} interior_mean={:.3}{}",
            e.kind,
            e.edge_pixels,
            e.mean_magnitude,
            e.interior_mean_magnitude,
            if e.kind == OperatorKind::default() { "  (default)" } else { "" }
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Extract(args) => extract(args),
        Command::Compare(args) => compare(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use htnn::experiments::rng::{standard_normal, stream};
use htnn::experiments::{
    complete_image, phase_grid, psnr, random_pixel_mask, render_heatmap, rse, write_cells_csv, write_reports_csv,
    write_trials_csv, EvalReport, ImageCompletionSpec, PhaseGridSpec,
};
use htnn::image_io::{
    check_image_path, read_image, read_mask_csv, read_mask_png, write_image, write_mask_csv, write_mask_png,
};
use htnn::tmatrix::write_tsvd_csv;
use htnn::{
    lift_image, ComplexArrayF64, Neighborhood, ObservationMask, RankTolerance, SpectralImageF64, TMatrixF64,
    ValueDomain,
};
use serde_json::json;

use crate::cli::{CompleteArgs, EvalArgs, SynthArgs, TsvdDumpArgs};
use crate::config::{parse_shape, FileConfig};
use crate::error::CliError;

type Result<T> = std::result::Result<T, CliError>;

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(bytes: &[u8]) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(bytes).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Usage(format!("stdout: {e}"))),
        _ => Ok(()),
    }
}

fn is_csv(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

fn required<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required (flag or config key)")))
}

fn as_array(img: &SpectralImageF64) -> Result<ComplexArrayF64> {
    Ok(ComplexArrayF64::from_real(vec![img.data().len()], img.data())?)
}

pub fn synth(args: SynthArgs, file: FileConfig) -> Result<()> {
    let (config, strict) = file.solver(&args.solver);
    let spec = PhaseGridSpec {
        dim: args.dim.or(file.dim).unwrap_or(40),
        scalar_shape: parse_shape(
            args.scalar_shape
                .as_deref()
                .or(file.scalar_shape.as_deref())
                .unwrap_or("3x3x3"),
        )?,
        ranks: args.ranks.or(file.ranks).unwrap_or_else(|| vec![1, 2, 4, 8]),
        missing: args
            .missing
            .or(file.missing.map(|m| m.into_vec()))
            .unwrap_or_else(|| vec![0.1, 0.3, 0.5, 0.7, 0.9]),
        trials: args.trials.or(file.trials).unwrap_or(3),
        threshold: args.threshold.or(file.threshold).unwrap_or(1e-2),
        seed: args.seed.or(file.seed).unwrap_or(0),
        config,
    };
    let out = required(args.out.or(file.out), "out")?;
    let heatmap = args.heatmap.or(file.heatmap);
    if let Some(path) = &heatmap {
        check_image_path(path, 3)?;
    }
    let start = Instant::now();
    let grid = phase_grid(&spec)?;
    let w = create(&out)?;
    write_cells_csv(&grid.cells, w)?;
    if let Some(path) = args.trials_out.or(file.trials_out) {
        write_trials_csv(&grid.trials, create(&path)?)?;
    }
    if let Some(path) = heatmap {
        render_heatmap(&grid.cells, args.cell_px.or(file.cell_px).unwrap_or(32), path)?;
    }
    let stalled = grid.trials.iter().filter(|t| !t.converged).count();
    eprintln!(
        "{} trials in {:.1}s, {} not converged; cells written to {}",
        grid.trials.len(),
        start.elapsed().as_secs_f64(),
        stalled,
        out.display()
    );
    if strict && stalled > 0 {
        return Err(CliError::NotConverged(format!(
            "{stalled} of {} trials",
            grid.trials.len()
        )));
    }
    Ok(())
}

fn load_mask(path: &Path, shape: [usize; 3]) -> Result<ObservationMask> {
    Ok(if is_csv(path) {
        read_mask_csv(path, shape)?
    } else {
        read_mask_png(path, shape)?
    })
}

fn save_mask(path: &Path, mask: &ObservationMask) -> Result<()> {
    if is_csv(path) {
        write_mask_csv(path, mask)?;
    } else {
        write_mask_png(path, mask)?;
    }
    Ok(())
}

pub fn complete(args: CompleteArgs, file: FileConfig) -> Result<()> {
    let (config, strict) = file.solver(&args.solver);
    let input = required(args.input.or(file.input), "input")?;
    let out = required(args.out.or(file.out), "out")?;
    let spec = ImageCompletionSpec {
        neighborhood: args
            .neighborhood
            .or(file.neighborhood)
            .unwrap_or(ImageCompletionSpec::default().neighborhood),
        boundary: args.boundary.or(file.boundary).unwrap_or_default(),
        domain: ValueDomain::Integer,
        config,
    };
    let seed = args.seed.or(file.seed).unwrap_or(0);
    let img: SpectralImageF64 = read_image(&input)?;
    check_image_path(&out, img.channels())?;

    let mask_path = args.mask.or(file.mask);
    let file_missing = match file.missing {
        Some(m) => match m.into_vec().as_slice() {
            [v] => Some(*v),
            _ => return Err(CliError::Usage("missing must be a single fraction for complete".into())),
        },
        None => None,
    };
    let missing = args.missing.or(file_missing);
    let (pixels, mask_echo) = match (&mask_path, missing) {
        (Some(path), None) => (load_mask(path, img.shape())?, json!({ "mask": path })),
        (None, Some(fraction)) => {
            if !(0.0..1.0).contains(&fraction) {
                return Err(CliError::Usage(format!("missing must lie in [0, 1), got {fraction}")));
            }
            (
                random_pixel_mask(img.shape(), fraction, seed)?,
                json!({ "missing": fraction, "seed": seed }),
            )
        }
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "give either a mask file or a missing fraction, not both".into(),
            ))
        }
        (None, None) => {
            return Err(CliError::Usage(
                "a mask file (--mask) or a missing fraction (--missing) is required".into(),
            ))
        }
    };
    if let Some(path) = args.save_mask.or(file.save_mask) {
        save_mask(&path, &pixels)?;
    }
    if let Some(path) = args.save_masked.or(file.save_masked) {
        let masked = SpectralImageF64::from_fn(img.height(), img.width(), img.channels(), |r, c, ch| {
            if pixels.is_observed(img.index(r, c, ch)) {
                img.get(r, c, ch)
            } else {
                0.0
            }
        })?;
        write_image(&path, &masked)?;
    }

    let start = Instant::now();
    let result = complete_image(&img, &pixels, &spec)?;
    let wall = start.elapsed().as_secs_f64();
    write_image(&out, &result.recovered)?;

    let report = EvalReport {
        label: input
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default(),
        rse: rse(&as_array(&img)?, &as_array(&result.recovered)?)?,
        psnr_db: Some(psnr(&result.recovered, &img, spec.domain)?),
        iterations: result.trace.iterations(),
        converged: result.trace.converged,
        final_residual: result.trace.final_residual(),
        wall_time_s: wall,
        config: json!({
            "input": input,
            "neighborhood": spec.neighborhood,
            "boundary": spec.boundary,
            "solver": spec.config,
            "source": mask_echo,
        }),
    };
    let json = report.to_json()?;
    match args.report.or(file.report) {
        Some(path) => write_text(&path, &(json + "\n"))?,
        None => emit((json + "\n").as_bytes())?,
    }
    if let Some(path) = args.report_csv.or(file.report_csv) {
        let w = create(&path)?;
        write_reports_csv(std::slice::from_ref(&report), w)?;
    }
    eprintln!(
        "{} missing of {}: PSNR {:.3} dB after {} iterations ({:.1}s), written to {}",
        pixels.missing_count(),
        pixels.len(),
        report.psnr_db.unwrap_or(f64::NAN),
        report.iterations,
        wall,
        out.display()
    );
    if !result.trace.converged {
        let msg = format!(
            "stopped after {} iterations with residual {:e}",
            report.iterations,
            report.final_residual.unwrap_or(f64::NAN)
        );
        if strict {
            return Err(CliError::NotConverged(msg));
        }
        eprintln!("warning: {msg}");
    }
    Ok(())
}

pub fn eval(args: EvalArgs) -> Result<()> {
    let recovered: SpectralImageF64 = read_image(&args.recovered)?;
    let reference: SpectralImageF64 = read_image(&args.reference)?;
    let report = EvalReport {
        label: args.recovered.display().to_string(),
        rse: rse(&as_array(&reference)?, &as_array(&recovered)?)?,
        psnr_db: Some(psnr(&recovered, &reference, ValueDomain::Integer)?),
        iterations: 0,
        converged: true,
        final_residual: None,
        wall_time_s: 0.0,
        config: json!({ "recovered": args.recovered, "reference": args.reference }),
    };
    let json = report.to_json()?;
    match &args.out {
        Some(path) => write_text(path, &(json + "\n"))?,
        None => emit((json + "\n").as_bytes())?,
    }
    if let Some(path) = args.report_csv {
        write_reports_csv(std::slice::from_ref(&report), create(&path)?)?;
    }
    Ok(())
}

pub fn tsvd_dump(args: TsvdDumpArgs, file: FileConfig) -> Result<()> {
    let x = match args.image.or(file.image) {
        Some(path) => {
            let img: SpectralImageF64 = read_image(&path)?;
            let nb = args
                .neighborhood
                .or(file.neighborhood)
                .unwrap_or(Neighborhood::new(1, 1)?);
            lift_image(&img, nb, args.boundary.or(file.boundary).unwrap_or_default())?.tmatrix
        }
        None => {
            let shape = parse_shape(
                args.scalar_shape
                    .as_deref()
                    .or(file.scalar_shape.as_deref())
                    .unwrap_or("2x2"),
            )?;
            let (rows, cols) = (
                args.rows.or(file.rows).unwrap_or(4),
                args.cols.or(file.cols).unwrap_or(3),
            );
            let mut rng = stream(args.seed.or(file.seed).unwrap_or(0), &[]);
            let n = shape.iter().product::<usize>() * rows * cols;
            let values: Vec<f64> = (0..n).map(|_| standard_normal(&mut rng)).collect();
            TMatrixF64::from_real(&shape, rows, cols, &values)?
        }
    };
    let factors = x.tsvd()?;
    let rank = x.higher_order_rank(RankTolerance::Auto)?;
    eprintln!(
        "scalar shape {:?}, {} x {}: tubal rank {}, trace rank {}, average rank {}",
        x.scalar_shape(),
        x.rows(),
        x.cols(),
        rank.tubal(),
        rank.trace(),
        rank.average()
    );
    let out: Option<PathBuf> = args.out.or(file.out);
    match out {
        Some(path) => {
            let w = create(&path)?;
            write_tsvd_csv(&factors, w)?;
        }
        None => {
            let mut buf = Vec::new();
            write_tsvd_csv(&factors, &mut buf)?;
            emit(&buf)?;
        }
    }
    Ok(())
}

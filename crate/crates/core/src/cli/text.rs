//! Human-readable rendering of the CLI reports.

use std::io::{self, Write};

use super::{CertificateJson, ComplexJson, OutcomeJson, Report};

pub(super) fn write(report: &Report, out: &mut dyn Write) -> io::Result<()> {
    match report {
        Report::Norm(r) => {
            writeln!(out, "polynomial    {}", r.polynomial)?;
            writeln!(out, "norm          {}", r.norm)?;
            writeln!(out, "best point    {}", complex(r.best_point))?;
            writeln!(out, "method        {}", r.method)?;
            writeln!(out, "seeds used    {} (rng seed {})", r.seeds_used, r.rng_seed)?;
            writeln!(out, "bernstein ok  {}", r.bernstein_ok)?;
            writeln!(out)?;
            certificate_table(&r.candidates, out)
        }
        Report::Certify(r) => {
            writeln!(out, "polynomial    {}", r.polynomial)?;
            certificate_table(std::slice::from_ref(&r.certificate), out)?;
            if let Some(e) = &r.explain {
                writeln!(out)?;
                writeln!(out, "k             {}", opt(e.k))?;
                writeln!(out, "alpha         {}", opt(e.alpha))?;
                writeln!(out, "at root       {}", e.at_root)?;
                writeln!(out, "outward       {}", e.radial_outward.unwrap_or("-"))?;
                writeln!(out, "inward        {}", e.radial_inward.unwrap_or("-"))?;
            }
            Ok(())
        }
        Report::Orbit(r) => {
            writeln!(out, "polynomial    {}", r.polynomial)?;
            writeln!(out, "method        {}", r.method)?;
            writeln!(out, "seed          {}", complex(r.seed))?;
            writeln!(out, "outcome       {}", outcome(&r.outcome))?;
            writeln!(out, "iterations    {} (cap {})", r.iterations, r.max_iter)?;
            writeln!(out)?;
            writeln!(out, "{:>5}  iterate", "k")?;
            for (k, z) in r.iterates.iter().enumerate() {
                writeln!(out, "{k:>5}  {}", complex(*z))?;
            }
            if r.iterate_count > r.iterates.len() {
                writeln!(out, "  ... {} more", r.iterate_count - r.iterates.len())?;
            }
            Ok(())
        }
        Report::Basins(r) => {
            writeln!(out, "polynomial    {}", r.polynomial)?;
            writeln!(out, "method        {}", r.method)?;
            writeln!(out, "image         {} ({}x{})", r.out, r.width, r.height)?;
            writeln!(out, "max iter      {}", r.max_iter)?;
            writeln!(out)?;
            writeln!(out, "{:>5}  {:<44} pixels", "label", "attractor")?;
            for (k, (z, n)) in r.attractors.iter().zip(&r.pixel_counts).enumerate() {
                writeln!(out, "{k:>5}  {:<44} {n}", complex(*z))?;
            }
            writeln!(out, "{:>5}  {:<44} {}", "-", "(none)", r.unlabelled)
        }
        Report::Roots(r) => {
            writeln!(out, "polynomial    {}", r.polynomial)?;
            writeln!(out, "residual      {:e}", r.residual_bound)?;
            writeln!(out)?;
            writeln!(out, "{:<44} multiplicity", "root")?;
            for root in &r.roots {
                writeln!(out, "{:<44} {}", complex(root.root), root.multiplicity)?;
            }
            Ok(())
        }
    }
}

fn certificate_table(certs: &[CertificateJson], out: &mut dyn Write) -> io::Result<()> {
    writeln!(
        out,
        "{:<44} {:>12} {:>22} {:>12} {:>8}",
        "point", "residual", "modulus", "|p/p'|", "accepted"
    )?;
    for c in certs {
        writeln!(
            out,
            "{:<44} {:>12.3e} {:>22} {:>12.6} {:>8}",
            complex(c.point),
            c.residual,
            c.modulus,
            c.newton_ratio,
            c.accepted
        )?;
    }
    Ok(())
}

fn complex(z: ComplexJson) -> String {
    if z.im.is_sign_negative() {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

fn outcome(o: &OutcomeJson) -> String {
    match (o.attractor, o.reason) {
        (Some(z), _) => format!("{} at {}", o.status, complex(z)),
        (None, Some(reason)) => format!("{} ({reason})", o.status),
        (None, None) => o.status.to_string(),
    }
}

fn opt<T: ToString>(value: Option<T>) -> String {
    value.map_or_else(|| "-".to_string(), |v| v.to_string())
}

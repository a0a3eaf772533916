use std::io::Write;

use parkfn::colored::{colored_phi, colored_phi_inv, rho_1b, rho_1b_hat, rho_kk, rho_kk_hat};
use parkfn::dist::{empirical_distribution, exact_distribution};
use parkfn::forest::{enumerate_forests, phi, phi_inv};
use parkfn::gf::{check_identity, desk_grid, Family, Identity};
use parkfn::involutions::{k_set, reduced_preference_partition, rho_at, rho_hat_at, theta, theta_hat};
use parkfn::pf::{enumerate_pf, fmt_prefs};
use parkfn::sampler::BLOCK;
use parkfn::{ParkingFunction, Params, RootedForest, RootedTree, Sampler, SeededRng};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Cli, Command, Format, Map, Opts};
use crate::error::CliError;
use crate::input::{for_each_item, Item};

type Out<'a> = &'a mut dyn Write;

pub fn dispatch(cli: &Cli, out: Out) -> Result<(), CliError> {
    let opts = &cli.opts;
    match &cli.command {
        Command::Count => count(opts, out),
        Command::Enumerate => enumerate(opts, out),
        Command::Sample => sample(opts, out),
        Command::Stats => stats(opts, out),
        Command::Verify { all, .. } => verify(opts, *all, out),
        Command::Bijection => bijection(opts, out),
        Command::Dist => dist(opts, out),
    }
}

fn json_line(out: Out, value: &impl Serialize) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn csv_row(prefs: &[u32]) -> String {
    prefs.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn csv_header(m: u32) -> String {
    (1..=m).map(|i| format!("pi_{i}")).collect::<Vec<_>>().join(",")
}

fn forest_params(opts: &Opts) -> Result<Params, CliError> {
    let params = opts.params()?;
    match params {
        Params::Classical(_) => Ok(params),
        Params::Ab(_) => Err(CliError::Usage("forests take --m and --n".into())),
    }
}

fn no_csv(opts: &Opts, what: &str) -> Result<(), CliError> {
    match opts.format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::Usage(format!("{what} has no CSV form"))),
    }
}

fn count(opts: &Opts, out: Out) -> Result<(), CliError> {
    opts.family()?;
    let params = opts.params()?;
    // Forests are counted by the same closed form through the bijection.
    writeln!(out, "{}", params.count())?;
    Ok(())
}

fn enumerate(opts: &Opts, out: Out) -> Result<(), CliError> {
    let family = opts.family()?;
    let cap = opts.cap();
    if family == Family::Forest {
        no_csv(opts, "a forest")?;
        let params = forest_params(opts)?;
        let n = opts.n.expect("checked by params");
        for f in enumerate_forests(params.m(), n, cap)? {
            json_line(out, &f)?;
        }
        return Ok(());
    }
    let params = opts.params()?;
    if opts.format == Format::Csv {
        writeln!(out, "{}", csv_header(params.m()))?;
    }
    for pf in enumerate_pf(params, cap)? {
        match opts.format {
            Format::Json => json_line(out, &pf)?,
            Format::Csv => writeln!(out, "{}", csv_row(pf.prefs()))?,
        }
    }
    Ok(())
}

fn sample(opts: &Opts, out: Out) -> Result<(), CliError> {
    let family = opts.family()?;
    let params = if family == Family::Forest { forest_params(opts)? } else { opts.params()? };
    let samples = opts.require_samples()?;
    let meta = json!({
        "family": family,
        "params": params,
        "samples": samples,
        "seed": opts.seed,
        "rng": SeededRng::ALGORITHM,
        "block": BLOCK,
    });
    match opts.format {
        Format::Json => json_line(out, &json!({ "meta": meta }))?,
        Format::Csv => {
            no_csv_for_forest(family)?;
            for (k, v) in meta.as_object().expect("object literal") {
                writeln!(out, "# {k}: {}", plain(v))?;
            }
            writeln!(out, "{}", csv_header(params.m()))?;
        }
    }
    for pf in Sampler::new(params, opts.seed).take(samples) {
        match (opts.format, family) {
            (Format::Csv, _) => writeln!(out, "{}", csv_row(pf.prefs()))?,
            (Format::Json, Family::Forest) => json_line(out, &phi_inv(&pf)?)?,
            (Format::Json, _) => json_line(out, &pf)?,
        }
    }
    Ok(())
}

fn no_csv_for_forest(family: Family) -> Result<(), CliError> {
    if family == Family::Forest {
        return Err(CliError::Usage("a forest has no CSV form".into()));
    }
    Ok(())
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn pf_stats(pf: &ParkingFunction) -> Value {
    let prefs = pf.prefs();
    json!({
        "pf": pf,
        "lel": pf.lel(),
        "slev": pf.slev(),
        "ones": pf.ones(),
        "specification": pf.specification().0,
        "order_permutation": pf.order_permutation(),
        "k_set": k_set(prefs),
        "reduced_partition": reduced_preference_partition(prefs),
    })
}

fn stats(opts: &Opts, out: Out) -> Result<(), CliError> {
    let csv = opts.format == Format::Csv;
    if csv {
        match opts.statistic {
            Some(s) => writeln!(out, "object,{s}")?,
            None => writeln!(out, "object,lel,slev,ones")?,
        }
    }
    for_each_item(opts, |item| {
        let (label, row): (String, Value) = match (&item, opts.statistic) {
            (Item::Pf { pf, .. }, None) => (fmt_prefs(pf.prefs()), pf_stats(pf)),
            (Item::Forest(f), None) => {
                let image = phi(f);
                let row = json!({
                    "forest": f,
                    "deg0": f.deg_root_total(),
                    "degp": f.deg_parent_of_1(),
                    "specification": f.specification(),
                    "sigma": f.sigma(),
                    "phi": image,
                });
                (fmt_prefs(image.prefs()), row)
            }
            (Item::Pf { pf, .. }, Some(s)) => {
                s.validate(pf.params())?;
                let v = s.on_prefs(pf.prefs(), pf.params())?;
                (fmt_prefs(pf.prefs()), json!({ "pf": pf, "statistic": s, "value": v }))
            }
            (Item::Forest(f), Some(s)) => {
                let v = if s.is_forest_statistic() {
                    s.on_forest(f)?
                } else {
                    let image = phi(f);
                    s.on_prefs(image.prefs(), image.params())?
                };
                (fmt_prefs(phi(f).prefs()), json!({ "forest": f, "statistic": s, "value": v }))
            }
            (Item::Colored(_), _) => {
                return Err(CliError::Usage("stats takes parking functions or forests".into()))
            }
        };
        if csv {
            let cells: Vec<String> = match opts.statistic {
                Some(_) => vec![row["value"].to_string()],
                None if row.get("lel").is_some() => ["lel", "slev", "ones"].map(|k| row[k].to_string()).into(),
                None => vec![row["degp"].to_string(), row["deg0"].to_string(), String::new()],
            };
            writeln!(out, "\"{label}\",{}", cells.join(","))?;
            Ok(())
        } else {
            json_line(out, &row)
        }
    })
}

fn verify(opts: &Opts, all: bool, out: Out) -> Result<(), CliError> {
    if all {
        if opts.identity.is_some() {
            return Err(CliError::Usage("--all and --identity are exclusive".into()));
        }
        return verify_all(opts, out);
    }
    let identity = opts
        .identity
        .ok_or_else(|| CliError::Usage("--identity or --all is required".into()))?;
    let params = opts.params()?;
    let report = check_identity(identity, params, opts.cap())?;
    match opts.format {
        Format::Json => json_line(out, &report)?,
        Format::Csv => {
            writeln!(out, "identity,params,equal")?;
            writeln!(out, "{identity},\"{params}\",{}", report.equal)?;
        }
    }
    if report.equal {
        Ok(())
    } else {
        Err(CliError::IdentityFailed)
    }
}

fn verify_all(opts: &Opts, out: Out) -> Result<(), CliError> {
    let csv = opts.format == Format::Csv;
    if csv {
        writeln!(out, "identity,instances,failed")?;
    }
    let (mut instances, mut failed) = (0, 0);
    for identity in Identity::ALL {
        let (mut n, mut bad) = (0, Vec::new());
        for params in desk_grid(identity) {
            let report = check_identity(identity, params, opts.cap())?;
            n += 1;
            if !report.equal {
                bad.push(params);
            }
        }
        instances += n;
        failed += bad.len();
        if csv {
            writeln!(out, "{identity},{n},{}", bad.len())?;
        } else {
            json_line(out, &json!({ "identity": identity, "instances": n, "failed": bad }))?;
        }
    }
    if csv {
        writeln!(out, "total,{instances},{failed}")?;
    } else {
        json_line(out, &json!({ "summary": { "instances": instances, "failed": failed } }))?;
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::IdentityFailed)
    }
}

fn emit_pf(out: Out, pf: &ParkingFunction, paren: bool) -> Result<(), CliError> {
    if paren {
        writeln!(out, "{}", fmt_prefs(pf.prefs()))?;
        Ok(())
    } else {
        json_line(out, pf)
    }
}

fn as_tree(f: &RootedForest) -> Result<RootedTree, CliError> {
    Ok(RootedTree::try_from(f)?)
}

fn bijection(opts: &Opts, out: Out) -> Result<(), CliError> {
    no_csv(opts, "bijection output")?;
    let map = opts.map.ok_or_else(|| CliError::Usage("--map is required".into()))?;
    let vertex = opts.vertex.unwrap_or(1);
    for_each_item(opts, |item| {
        match (map, &item) {
            (Map::Theta, Item::Forest(f)) => json_line(out, &RootedForest::from(&theta(&as_tree(f)?)))?,
            (Map::Rho, Item::Forest(f)) => json_line(out, &RootedForest::from(&rho_at(&as_tree(f)?, vertex)?))?,
            (Map::Phi, Item::Forest(f)) => json_line(out, &phi(f))?,
            (Map::ThetaHat, Item::Pf { pf, paren }) => emit_pf(out, &theta_hat(pf)?, *paren)?,
            (Map::RhoHat, Item::Pf { pf, paren }) => emit_pf(out, &rho_hat_at(pf, vertex)?, *paren)?,
            (Map::Rho1bHat, Item::Pf { pf, paren }) => emit_pf(out, &rho_1b_hat(pf)?, *paren)?,
            (Map::RhoKkHat, Item::Pf { pf, paren }) => emit_pf(out, &rho_kk_hat(pf)?, *paren)?,
            (Map::PhiInv, Item::Pf { pf, .. }) => json_line(out, &phi_inv(pf)?)?,
            (Map::ColoredPhiInv, Item::Pf { pf, .. }) => json_line(out, &colored_phi_inv(pf)?)?,
            (Map::ColoredPhi, Item::Colored(t)) => json_line(out, &colored_phi(t))?,
            (Map::Rho1b, Item::Colored(t)) => json_line(out, &rho_1b(t)?)?,
            (Map::RhoKk, Item::Colored(t)) => json_line(out, &rho_kk(t)?)?,
            (map, item) => {
                return Err(CliError::Usage(format!("map {map:?} does not apply to {}", item.describe())))
            }
        }
        Ok(())
    })
}

fn dist(opts: &Opts, out: Out) -> Result<(), CliError> {
    let family = opts.family()?;
    let params = if family == Family::Forest { forest_params(opts)? } else { opts.params()? };
    let stat = opts
        .statistic
        .ok_or_else(|| CliError::Usage("--statistic is required".into()))?;
    let table = match opts.samples {
        Some(samples) => empirical_distribution(family, params, stat, samples, opts.seed)?,
        None => exact_distribution(family, params, stat, opts.cap())?,
    };
    match opts.format {
        Format::Json => json_line(out, &table),
        Format::Csv => {
            write!(out, "{}", table.to_csv())?;
            Ok(())
        }
    }
}

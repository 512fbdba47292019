use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use intcells_core::convex::{
    best_cell_projection, comb_dimension_body, count_integer_cells_body, lp_ball_volume, parse_p, sweep,
    verify_convex, ConstantsConfig, ConvexClaim, ConvexParams,
};
use intcells_core::generators::{GenSpec, Instance};
use intcells_core::lattice::{
    box_content, cell_content, cell_content_terms, integer_boxes_in, integer_cells_in_cconv, natarajan_dimension,
    natarajan_witness, project, shattering_dimension_discrete, vc_dimension, verify_discrete, DiscreteClaim,
    DiscreteParams, IntegerPointSet,
};
use intcells_core::polytope::{polar, project_polytope, section, CoordSubspace, RationalPolytope};
use intcells_core::rational::{int, parse_rational, Rational};
use intcells_core::report::digest_of;
use intcells_core::IndexSet;
use serde_json::{json, Value};

use crate::io::{self, Document, RunManifest};
use crate::{oracle, Cli, CliError, Command, DimKind};

struct Ctx<'a> {
    cli: &'a Cli,
    argv: &'a [String],
    cfg: ConstantsConfig,
    start: Instant,
}

impl Ctx<'_> {
    fn manifest(&self, extra_seeds: &[(&str, u64)]) -> RunManifest {
        let mut seeds = BTreeMap::new();
        seeds.insert("mc_seed".to_string(), self.cfg.mc_seed);
        for (k, v) in extra_seeds {
            seeds.insert(k.to_string(), *v);
        }
        RunManifest {
            command_line: self.argv.to_vec(),
            config_sha256: digest_of(&self.cfg),
            seeds,
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_s: self.start.elapsed().as_secs_f64(),
        }
    }

    fn doc(&self, command: &str) -> Document {
        Document::new(command, self.manifest(&[]))
    }

    fn input(&self) -> Result<Instance, CliError> {
        let path = self.cli.common.input.as_deref().ok_or_else(|| CliError::Input("--in is required".into()))?;
        io::load_instance(path)
    }

    fn point_set(&self) -> Result<IntegerPointSet, CliError> {
        match self.input()? {
            Instance::PointSet(a) => Ok(a),
            _ => Err(CliError::Input("this command needs a point set".into())),
        }
    }

    fn polytope(&self) -> Result<RationalPolytope, CliError> {
        match self.input()? {
            Instance::Polytope(k) => Ok(k),
            _ => Err(CliError::Input("this command needs a polytope".into())),
        }
    }

    fn proj(&self, ambient: usize) -> Result<Option<IndexSet>, CliError> {
        self.cli.common.proj.as_deref().map(|s| io::parse_index_set(s, ambient)).transpose()
    }

    fn required_proj(&self, ambient: usize) -> Result<IndexSet, CliError> {
        self.proj(ambient)?.ok_or_else(|| CliError::Input("--proj is required".into()))
    }

    fn scale(&self) -> Result<Rational, CliError> {
        match &self.cli.common.t {
            None => Ok(int(1)),
            Some(t) => Ok(parse_rational(t)?),
        }
    }

    fn tol(&self) -> f64 {
        self.cli.common.tol.unwrap_or(1e-9)
    }

    fn params(&self) -> Vec<(String, String)> {
        self.cli
            .common
            .params
            .iter()
            .map(|p| match p.split_once('=') {
                Some((k, v)) => (k.trim().to_string(), v.trim().to_string()),
                None => (p.trim().to_string(), String::new()),
            })
            .collect()
    }
}

/// Runs one command; `Ok(false)` means a violated claim or an oracle
/// disagreement.
pub fn run(cli: &Cli, argv: &[String]) -> Result<bool, CliError> {
    let mut cfg = io::load_config(cli.common.cfg.as_deref())?;
    if let Some(seed) = cli.common.seed {
        cfg.mc_seed = seed;
    }
    if let Some(samples) = cli.common.samples {
        cfg.mc_samples = samples;
    }
    cfg.validate()?;
    let ctx = Ctx { cli, argv, cfg, start: Instant::now() };
    let doc = match &cli.command {
        Command::Gen { family } => return gen(&ctx, family),
        Command::Project | Command::Section | Command::Polar => return transform(&ctx),
        Command::Cells => cells(&ctx)?,
        Command::Boxes => boxes(&ctx)?,
        Command::Content => content(&ctx)?,
        Command::Dim { kind } => dim(&ctx, *kind)?,
        Command::Volume => volume(&ctx)?,
        Command::Verify { claim } => verify(&ctx, claim)?,
        Command::Sweep { claim } => sweep_cmd(&ctx, claim)?,
        Command::Report { files } => report(&ctx, files)?,
    };
    let mut doc = doc;
    doc.manifest.wall_time_s = ctx.start.elapsed().as_secs_f64();
    io::emit(&io::render(&doc, cli.common.format)?, cli.common.out.as_deref())?;
    Ok(!doc.failed())
}

/// Builds a generator spec from `--param` pairs: comma lists become arrays,
/// JSON scalars are kept, anything else is passed as a string.
fn gen_spec(family: &str, params: &[(String, String)], seed: u64) -> Result<GenSpec, CliError> {
    let scalar = |v: &str| serde_json::from_str::<Value>(v).unwrap_or_else(|_| Value::String(v.to_string()));
    let mut obj = serde_json::Map::new();
    obj.insert("family".into(), Value::String(family.to_string()));
    obj.insert("seed".into(), json!(seed));
    for (k, v) in params {
        let value = if v.contains(',') { Value::Array(v.split(',').map(|x| scalar(x.trim())).collect()) } else { scalar(v) };
        obj.insert(k.clone(), value);
    }
    serde_json::from_value(Value::Object(obj)).map_err(|e| CliError::Input(format!("generator `{family}`: {e}")))
}

fn gen(ctx: &Ctx, family: &str) -> Result<bool, CliError> {
    let seed = ctx.cli.common.seed.unwrap_or(0);
    let spec = gen_spec(family, &ctx.params(), seed)?;
    let instance = spec.generate()?;
    let text = io::instance_json(&instance) + "\n";
    write_instance(ctx, &instance, &text, &[("gen_seed", seed)])
}

/// Instances go to `--out` (with a manifest on standard output) or to
/// standard output.
fn write_instance(ctx: &Ctx, instance: &Instance, text: &str, seeds: &[(&str, u64)]) -> Result<bool, CliError> {
    match &ctx.cli.common.out {
        None => io::emit(text, None)?,
        Some(path) => {
            io::emit(text, Some(path))?;
            let mut doc = Document::new(command_name(&ctx.cli.command), ctx.manifest(seeds));
            doc.result = json!({ "written": path, "input_digest": io::instance_digest(instance) });
            io::emit(&io::render(&doc, ctx.cli.common.format)?, None)?;
        }
    }
    Ok(true)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Gen { .. } => "gen",
        Command::Cells => "cells",
        Command::Boxes => "boxes",
        Command::Content => "content",
        Command::Dim { .. } => "dim",
        Command::Volume => "volume",
        Command::Project => "project",
        Command::Section => "section",
        Command::Polar => "polar",
        Command::Verify { .. } => "verify",
        Command::Sweep { .. } => "sweep",
        Command::Report { .. } => "report",
    }
}

fn transform(ctx: &Ctx) -> Result<bool, CliError> {
    let instance = ctx.input()?;
    let out = match (&ctx.cli.command, instance) {
        (Command::Project, Instance::PointSet(a)) => Instance::PointSet(project(&a, &ctx.required_proj(a.dim())?)?),
        (Command::Project, Instance::Polytope(k)) => {
            Instance::Polytope(project_polytope(&k, &ctx.required_proj(k.dim())?)?)
        }
        (Command::Section, Instance::Polytope(k)) => {
            let e = CoordSubspace::new(ctx.required_proj(k.dim())?)?;
            Instance::Polytope(section(&k, &e)?)
        }
        (Command::Polar, Instance::Polytope(k)) => {
            let p = polar(&k)?;
            if ctx.cli.common.oracle {
                let check = oracle::polar(&k, &p);
                if !check.agree {
                    eprintln!("oracle disagreement: {}", serde_json::to_string(&check).expect("serializable"));
                    return Ok(false);
                }
            }
            Instance::Polytope(p)
        }
        _ => return Err(CliError::Input("this command needs a polytope (project also takes point sets)".into())),
    };
    let text = io::instance_json(&out) + "\n";
    write_instance(ctx, &out, &text, &[])
}

fn cells(ctx: &Ctx) -> Result<Document, CliError> {
    let mut doc = ctx.doc("cells");
    match ctx.input()? {
        Instance::PointSet(a) => {
            let digest = digest_of(&a);
            match ctx.proj(a.dim())? {
                Some(i) => {
                    let cells = integer_cells_in_cconv(&a, &i)?;
                    doc.result = json!({ "input_digest": digest, "projection": i, "value": cells.len(), "cells": cells });
                    if ctx.cli.common.oracle {
                        doc.oracle = Some(oracle::point_set_cells(&a, &[(i, cells.len() as u64)]));
                    }
                }
                None => {
                    let terms = cell_content_terms(&a);
                    let best = terms.iter().max_by(|x, y| x.count.cmp(&y.count).then(y.projection.cmp(&x.projection)));
                    doc.result = json!({
                        "input_digest": digest,
                        "projection": best.map(|t| t.projection),
                        "value": best.map_or(0, |t| t.count),
                        "per_projection": terms,
                    });
                    if ctx.cli.common.oracle {
                        let pairs: Vec<(IndexSet, u64)> = terms.iter().map(|t| (t.projection, t.count)).collect();
                        doc.oracle = Some(oracle::point_set_cells(&a, &pairs));
                    }
                }
            }
        }
        Instance::Polytope(k) => {
            let digest = digest_of(&k);
            let pairs = match ctx.proj(k.dim())? {
                Some(i) => {
                    let count = count_integer_cells_body(&k, &i)?;
                    doc.result = json!({ "input_digest": digest, "projection": i, "value": count });
                    vec![(i, count)]
                }
                None => {
                    let best = best_cell_projection(&k)?;
                    doc.result = json!({
                        "input_digest": digest,
                        "projection": best.projection,
                        "value": best.count,
                        "per_projection": best.counts,
                    });
                    best.counts
                }
            };
            if ctx.cli.common.oracle {
                doc.oracle = Some(oracle::polytope_cells(&k, &pairs));
            }
        }
        Instance::Oracle(_) => return Err(CliError::Input("cells needs a point set or a polytope".into())),
    }
    Ok(doc)
}

fn boxes(ctx: &Ctx) -> Result<Document, CliError> {
    let a = ctx.point_set()?;
    let mut doc = ctx.doc("boxes");
    let pairs: Vec<(IndexSet, u64)> = match ctx.proj(a.dim())? {
        Some(i) => {
            let count = integer_boxes_in(&a, &i)?;
            doc.result = json!({ "input_digest": digest_of(&a), "projection": i, "value": count });
            vec![(i, count)]
        }
        None => {
            let per: Vec<(IndexSet, u64)> = IndexSet::all_nonempty(a.dim())
                .into_iter()
                .map(|i| integer_boxes_in(&a, &i).map(|c| (i, c)))
                .collect::<Result<_, _>>()?;
            doc.result = json!({ "input_digest": digest_of(&a), "value": box_content(&a), "per_projection": per });
            per
        }
    };
    if ctx.cli.common.oracle {
        doc.oracle = Some(oracle::point_set_boxes(&a, &pairs));
    }
    Ok(doc)
}

fn content(ctx: &Ctx) -> Result<Document, CliError> {
    let a = ctx.point_set()?;
    let mut doc = ctx.doc("content");
    let terms = cell_content_terms(&a);
    let value = cell_content(&a);
    doc.result = json!({ "input_digest": digest_of(&a), "value": value, "size": a.len(), "terms": terms });
    if ctx.cli.common.oracle {
        doc.oracle = Some(oracle::content(&a, value));
    }
    Ok(doc)
}

fn dim(ctx: &Ctx, kind: DimKind) -> Result<Document, CliError> {
    let mut doc = ctx.doc("dim");
    let instance = ctx.input()?;
    match (kind, instance) {
        (DimKind::Vc, Instance::PointSet(a)) => {
            let v = vc_dimension(&a)?;
            doc.result = json!({ "input_digest": digest_of(&a), "kind": "vc", "value": v });
            if ctx.cli.common.oracle {
                doc.oracle = Some(oracle::shattering(&a, &int(1), v));
            }
        }
        (DimKind::Natarajan, Instance::PointSet(a)) => {
            let v = natarajan_dimension(&a);
            doc.result = json!({
                "input_digest": digest_of(&a),
                "kind": "natarajan",
                "value": v,
                "witness": natarajan_witness(&a),
            });
            if ctx.cli.common.oracle {
                doc.oracle = Some(oracle::natarajan(&a, v));
            }
        }
        (DimKind::Comb, Instance::PointSet(a)) => {
            let t = ctx.scale()?;
            let (v, witness) = shattering_dimension_discrete(&a, &t)?;
            doc.result = json!({
                "input_digest": digest_of(&a),
                "kind": "comb",
                "t": t.to_string(),
                "value": v,
                "witness": witness,
            });
            if ctx.cli.common.oracle {
                doc.oracle = Some(oracle::shattering(&a, &t, v));
            }
        }
        (DimKind::Comb, Instance::Polytope(k)) => {
            let t = ctx.scale()?;
            let v = comb_dimension_body(&k, &t)?;
            doc.result = json!({ "input_digest": digest_of(&k), "kind": "comb", "t": t.to_string(), "value": v });
        }
        _ => return Err(CliError::Input("vc and natarajan need a point set; comb takes a point set or polytope".into())),
    }
    Ok(doc)
}

fn volume(ctx: &Ctx) -> Result<Document, CliError> {
    let mut doc = ctx.doc("volume");
    match ctx.input()? {
        Instance::Polytope(k) => {
            let v = k.volume()?;
            doc.result = json!({ "input_digest": digest_of(&k), "value": v.to_string(), "provenance": "exact" });
            if ctx.cli.common.oracle {
                doc.oracle = Some(oracle::volume(&k, &v, ctx.cfg.mc_samples, ctx.cfg.mc_seed));
            }
        }
        Instance::Oracle(body) => {
            let mu = body.mu_p(ctx.cfg.mc_samples, ctx.cfg.mc_seed);
            let w = lp_ball_volume(body.p, body.dim)?;
            doc.result = json!({
                "input_digest": digest_of(&body),
                "value": mu.value * w,
                "ci": mu.half_width.map(|h| h * w),
                "mu_p": mu,
                "provenance": "mc",
            });
        }
        Instance::PointSet(_) => return Err(CliError::Input("volume needs a polytope or an oracle body".into())),
    }
    Ok(doc)
}

fn verify(ctx: &Ctx, claim: &str) -> Result<Document, CliError> {
    let mut doc = ctx.doc("verify");
    if let Ok(c) = claim.parse::<DiscreteClaim>() {
        let a = ctx.point_set()?;
        let mut params = DiscreteParams::default();
        for (k, v) in ctx.params() {
            match k.as_str() {
                "coord" => {
                    let c: usize = v.parse().map_err(|_| CliError::Input(format!("bad coord `{v}`")))?;
                    if c == 0 {
                        return Err(CliError::Input("coord is one-based".into()));
                    }
                    params.coord = Some(c - 1);
                }
                "bounds" => {
                    params.bounds = Some(
                        v.split(',')
                            .map(|x| x.trim().parse().map_err(|_| CliError::Input(format!("bad bound `{x}`"))))
                            .collect::<Result<_, _>>()?,
                    )
                }
                _ => return Err(CliError::Input(format!("unknown parameter `{k}` for {c}"))),
            }
        }
        doc.report = Some(verify_discrete(c, &a, &params)?);
        if ctx.cli.common.oracle {
            doc.oracle = Some(oracle::point_set_input(&a));
        }
    } else if let Ok(c) = claim.parse::<ConvexClaim>() {
        let params = convex_params(ctx)?;
        let body = if c.needs_body() { Some(ctx.polytope()?) } else { None };
        doc.report = Some(verify_convex(c, body.as_ref(), &params, &ctx.cfg)?);
        doc.manifest.seeds.insert("seed".into(), params.seed);
        if ctx.cli.common.oracle {
            if let Some(k) = &body {
                doc.oracle = Some(oracle::polytope_input(k, ctx.cfg.mc_samples, ctx.cfg.mc_seed)?);
            }
        }
    } else {
        return Err(CliError::Input(format!("unknown claim `{claim}`\n{}", claim_usage())));
    }
    Ok(doc)
}

fn claim_usage() -> String {
    let discrete: Vec<&str> = DiscreteClaim::ALL.iter().map(|c| c.id()).collect();
    let convex: Vec<&str> = ConvexClaim::ALL.iter().map(|c| c.id()).collect();
    format!(
        "usage: intcells verify <CLAIM> --in FILE [--cfg FILE] [--param key=value]...\n  point-set claims: {}\n  polytope claims: {}",
        discrete.join(", "),
        convex.join(", ")
    )
}

fn convex_params(ctx: &Ctx) -> Result<ConvexParams, CliError> {
    let mut params = ConvexParams::default();
    for (k, v) in ctx.params() {
        if k == "p" {
            params.p = Some(parse_p(&v)?);
        } else {
            params.set(&k, &v)?;
        }
    }
    if let Some(seed) = ctx.cli.common.seed {
        params.seed = seed;
    }
    if let Some(tol) = ctx.cli.common.tol {
        params.tol = tol;
    }
    Ok(params)
}

fn sweep_cmd(ctx: &Ctx, claim: &str) -> Result<Document, CliError> {
    let c: ConvexClaim = claim
        .parse()
        .map_err(|_| CliError::Input(format!("unknown claim `{claim}`\n{}", claim_usage())))?;
    if !c.sweepable() {
        return Err(CliError::Input(format!("{c} has no constant to sweep")));
    }
    let dir = ctx.cli.common.corpus.as_deref().ok_or_else(|| CliError::Input("--corpus is required".into()))?;
    let corpus = io::load_corpus(dir)?;
    let bodies: Vec<RationalPolytope> = corpus.iter().map(|(_, k)| k.clone()).collect();
    let params = convex_params(ctx)?;
    let mut doc = ctx.doc("sweep");
    let result = sweep(c, &bodies, &params, &ctx.cfg)?;
    let gap = (result.constant - result.bisection).abs();
    doc.result = json!({
        "files": corpus.iter().map(|(p, _)| p.display().to_string()).collect::<Vec<_>>(),
        "measured_constant": result.constant,
        "bisection_agrees": gap <= ctx.tol().max(1e-9) * result.constant.abs().max(1.0),
    });
    doc.sweep = Some(result);
    Ok(doc)
}

fn report_files(paths: &[PathBuf]) -> Result<Vec<PathBuf>, CliError> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut files: Vec<PathBuf> = std::fs::read_dir(p)
                .map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|x| x == "json"))
                .collect();
            files.sort();
            out.extend(files);
        } else {
            out.push(p.clone());
        }
    }
    if out.is_empty() {
        return Err(CliError::Input("report needs at least one report file".into()));
    }
    Ok(out)
}

fn report(ctx: &Ctx, paths: &[PathBuf]) -> Result<Document, CliError> {
    let mut rows = Vec::new();
    let mut failed = 0;
    for f in report_files(paths)? {
        let doc = read_document(&f)?;
        let fail = doc.failed();
        failed += usize::from(fail);
        let (claim, lhs, rhs, constant) = match (&doc.report, &doc.sweep) {
            (Some(r), _) => (r.claim.clone(), r.lhs.to_string(), r.rhs.to_string(), r.measured_constant),
            (None, Some(s)) => (s.claim.clone(), String::new(), String::new(), Some(s.constant)),
            _ => (String::new(), String::new(), String::new(), None),
        };
        rows.push(json!({
            "file": f.display().to_string(),
            "command": doc.command,
            "claim": claim,
            "lhs": lhs,
            "rhs": rhs,
            "constant": constant,
            "pass": !fail,
            "oracle_agree": doc.oracle.as_ref().map(|o| o.agree),
        }));
    }
    let mut doc = ctx.doc("report");
    doc.result = json!({ "total": rows.len(), "passed": rows.len() - failed, "failed": failed, "rows": rows });
    Ok(doc)
}

fn read_document(path: &Path) -> Result<Document, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: not a report: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_params_become_a_spec() {
        let params = vec![("lengths".to_string(), "72,9/10".to_string())];
        let spec = gen_spec("pancake", &params, 0).unwrap();
        let Instance::Polytope(k) = spec.generate().unwrap() else { panic!("polytope expected") };
        assert_eq!(k.volume().unwrap(), intcells_core::rational::rat(324, 5));
        let params = vec![("n".to_string(), "2".to_string()), ("p".to_string(), "inf".to_string())];
        assert!(gen_spec("lp_ball", &params, 0).is_ok());
        assert!(gen_spec("nonsense", &[], 0).is_err());
    }
}

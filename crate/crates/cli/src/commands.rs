//! Handlers for everything except `verify`.

use std::path::Path;

use anyhow::{Context, Result};
use serde_json::json as value;
use thinset::catalan::{
    catalan_table, ell_sequence, enumerate_graphs, equivalence_classes, schroder_table, validate_graph,
    EnumerationMethod, GraphCode, GraphJson, LargenessGraph, SequenceTable,
};
use thinset::colorings::{
    gap3_coloring, gap_coloring, largeness_coloring, limit_lift, normalize_approximations, product_coloring,
    tournament_from_g, ApproxTable, Coloring, StagedColoring, Tournament,
};
use thinset::witness::{
    extract_dominator_gap, extract_dominator_largeness, extract_transitive, extremal_number, find_thin_set_budgeted,
    max_transitive_subtournament, DominationWitness, ExtractError, SearchBudget, SearchError, ThinWitness,
    TOURNAMENT_GUARD,
};

use crate::io::{
    csv_row, emit, fail, json, parse_list, read_coloring, read_text, unsupported, write_coloring, Exit, Format,
};
use crate::{
    ColorCmd, Ctx, ExtractCmd, GraphsCmd, LiftKind, Method, NumbersArgs, SeqKind, SolveCmd, TableArgs, WitnessSource,
};

/// `ell_sequence` sums over `2^(n-1)` sequences per term.
const ELL_MAX: usize = 22;
const SEQUENCE_MAX: usize = 5000;

fn search_error(e: SearchError) -> anyhow::Error {
    let exit = match e {
        SearchError::BudgetExceeded { .. } => Exit::Budget,
        _ => Exit::Input,
    };
    fail(exit, e.to_string())
}

fn extract_error(e: ExtractError) -> anyhow::Error {
    let exit = match e {
        ExtractError::InsufficientData { .. } => Exit::InsufficientData,
        ExtractError::NoThinSet => Exit::NoneExists,
        _ => Exit::Input,
    };
    fail(exit, e.to_string())
}

// ---------------------------------------------------------------- numbers

pub fn numbers(ctx: &Ctx, args: NumbersArgs) -> Result<()> {
    let table = match args.kind {
        SeqKind::Catalan | SeqKind::Schroder if args.max > SEQUENCE_MAX => {
            return Err(fail(Exit::Usage, format!("--max is limited to {SEQUENCE_MAX}")));
        }
        SeqKind::Ell if args.max > ELL_MAX => {
            return Err(fail(
                Exit::Usage,
                format!("ell is computed by its defining sum; --max is limited to {ELL_MAX}"),
            ));
        }
        SeqKind::Catalan => catalan_table(args.max),
        SeqKind::Schroder => schroder_table(args.max),
        SeqKind::Ell => ell_sequence(args.max),
    };
    let text = match ctx.format(Format::Csv) {
        Format::Csv => table.to_csv(),
        Format::Json => format!("{}\n", sequence_json(&table)),
        Format::Table => {
            let width = table.iter().map(|(i, _)| i.to_string().len()).max().unwrap_or(1);
            table.iter().map(|(i, v)| format!("{i:>width$}  {v}\n")).collect()
        }
        f => return Err(unsupported(f, "numbers")),
    };
    emit(ctx.output(), &text)
}

/// `{"kind", "values": [{"index","value"}]}`; values beyond `u64` become
/// decimal strings.
fn sequence_json(table: &SequenceTable) -> String {
    let values: Vec<serde_json::Value> = table
        .iter()
        .map(|(i, v)| {
            let s = v.to_string();
            let v = s
                .parse::<u64>()
                .map_or(serde_json::Value::String(s), serde_json::Value::from);
            value!({ "index": i, "value": v })
        })
        .collect();
    json(&value!({ "kind": table.kind().name(), "values": values }))
}

// ----------------------------------------------------------------- graphs

fn render_graphs(format: Format, graphs: &[GraphCode]) -> String {
    match format {
        Format::Json => graphs.iter().map(|g| format!("{}\n", json(&g.to_json()))).collect(),
        Format::Csv => {
            let mut out = csv_row(&["index", "n", "edges"]);
            for (i, g) in graphs.iter().enumerate() {
                let edges: Vec<String> = g.edges().iter().map(|(a, b)| format!("{{{a},{b}}}")).collect();
                out.push_str(&csv_row(&[i.to_string(), g.size().to_string(), edges.join(",")]));
            }
            out
        }
        Format::Dot => graphs
            .iter()
            .enumerate()
            .map(|(i, g)| g.to_dot().replacen("graph G", &format!("graph G{i}"), 1))
            .collect(),
        Format::Table => graphs.iter().map(|g| format!("{g}\n")).collect(),
    }
}

/// Graph records from a JSON stream: single objects, arrays of objects or
/// one object per line.
fn read_graphs(path: Option<&Path>) -> Result<Vec<GraphCode>> {
    let text = read_text(path)?;
    let mut out = Vec::new();
    for item in serde_json::Deserializer::from_str(&text).into_iter::<serde_json::Value>() {
        let item = item.context("parsing graph JSON")?;
        let records = match item {
            serde_json::Value::Array(items) => items,
            other => vec![other],
        };
        for rec in records {
            let g: GraphJson = serde_json::from_value(rec).context("expected {\"n\": .., \"edges\": [[i,j], ..]}")?;
            out.push(GraphCode::try_from(&g).with_context(|| format!("graph #{}", out.len()))?);
        }
    }
    if out.is_empty() {
        return Err(fail(Exit::Input, "no graphs in input"));
    }
    Ok(out)
}

fn largeness(codes: Vec<GraphCode>) -> Result<Vec<LargenessGraph>> {
    codes
        .into_iter()
        .enumerate()
        .map(|(i, c)| LargenessGraph::try_from(c).with_context(|| format!("graph #{i}")))
        .collect()
}

pub fn graphs(ctx: &Ctx, cmd: GraphsCmd) -> Result<()> {
    match cmd {
        GraphsCmd::Enumerate { n, method } => {
            let method = match method {
                Method::Filter => EnumerationMethod::Filter,
                Method::Recursive => EnumerationMethod::Recursive,
            };
            let graphs = enumerate_graphs(n, method)?;
            let codes: Vec<GraphCode> = graphs.iter().map(|g| g.code()).collect();
            emit(ctx.output(), &render_graphs(ctx.format(Format::Json), &codes))
        }
        GraphsCmd::Check { input } => {
            let codes = read_graphs(input.as_deref())?;
            let mut out = String::new();
            let mut invalid = 0;
            for code in &codes {
                let verdict = validate_graph(code);
                invalid += !verdict.is_valid() as usize;
                match ctx.format(Format::Json) {
                    Format::Json => {
                        let rec = value!({
                            "n": code.size(),
                            "edges": code.to_json().edges,
                            "valid": verdict.is_valid(),
                            "violations": verdict.violations,
                            "report": verdict.to_string(),
                        });
                        out.push_str(&format!("{}\n", json(&rec)));
                    }
                    Format::Table => out.push_str(&format!("{code}: {verdict}\n")),
                    f => return Err(unsupported(f, "graphs check")),
                }
            }
            emit(ctx.output(), &out)?;
            if invalid > 0 {
                return Err(fail(
                    Exit::Input,
                    format!("{invalid} of {} graphs violate the axioms", codes.len()),
                ));
            }
            Ok(())
        }
        GraphsCmd::Pack { input } => {
            let graphs = largeness(read_graphs(input.as_deref())?)?;
            let packed: Vec<GraphCode> = graphs.iter().map(|g| g.pack().code()).collect();
            emit(ctx.output(), &render_graphs(ctx.format(Format::Json), &packed))
        }
        GraphsCmd::Normalize { input } => {
            let graphs = largeness(read_graphs(input.as_deref())?)?;
            let normal: Vec<GraphCode> = graphs
                .iter()
                .map(|g| g.normalize().map(|h| h.code()))
                .collect::<Result<_, _>>()?;
            emit(ctx.output(), &render_graphs(ctx.format(Format::Json), &normal))
        }
        GraphsCmd::Classes { n } => {
            let graphs = enumerate_graphs(n, EnumerationMethod::Recursive)?;
            let mut out = String::new();
            for class in equivalence_classes(&graphs) {
                match ctx.format(Format::Json) {
                    Format::Json => {
                        let rec = value!({
                            "members": class.members,
                            "packed": class.packed,
                            "normal": class.normal,
                        });
                        out.push_str(&format!("{}\n", json(&rec)));
                    }
                    Format::Table => {
                        let list =
                            |gs: &[LargenessGraph]| gs.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("; ");
                        out.push_str(&format!(
                            "{} members | packed {} | normal {}\n",
                            class.members.len(),
                            list(&class.packed),
                            list(&class.normal)
                        ));
                    }
                    f => return Err(unsupported(f, "graphs classes")),
                }
            }
            emit(ctx.output(), &out)
        }
    }
}

// --------------------------------------------------------------- colorings

fn load_table(path: &Path, raw: bool) -> Result<ApproxTable> {
    let text = read_text(Some(path))?;
    let context = || format!("table {}", path.display());
    if !raw {
        return serde_json::from_str(&text)
            .map_err(|e| fail(Exit::Input, e.to_string()))
            .with_context(context);
    }
    let mut v: serde_json::Value = serde_json::from_str(&text).with_context(context)?;
    if let Some(values) = v.get_mut("values") {
        v = values.take();
    }
    let rows: Vec<Vec<u64>> = serde_json::from_value(v)
        .map_err(|e| fail(Exit::Input, format!("raw rows: {e}")))
        .with_context(context)?;
    normalize_approximations(&rows)
        .map_err(|e| fail(Exit::Input, e.to_string()))
        .with_context(context)
}

fn resolve(args: &TableArgs) -> Result<(ApproxTable, Vec<u64>)> {
    let table = load_table(&args.table, args.raw)?;
    let domain = match (&args.domain, args.domain_size) {
        (Some(list), _) => parse_list(list)?,
        (None, Some(d)) => (0..d).collect(),
        (None, None) => (0..table.stable_bound() as u64).collect(),
    };
    Ok((table, domain))
}

fn build(kind: LiftKind, n: usize, g: &ApproxTable, domain: Vec<u64>) -> Result<Coloring> {
    Ok(match kind {
        LiftKind::Gap => gap_coloring(n, g, domain)?,
        LiftKind::Largeness => largeness_coloring(n, g, domain)?,
        LiftKind::Gap3 => gap3_coloring(g, domain)?,
    })
}

fn tournament_dot(t: &Tournament) -> String {
    let mut out = String::from("digraph T {\n");
    for x in t.domain() {
        out.push_str(&format!("  {x};\n"));
    }
    for (x, y) in t.arcs() {
        out.push_str(&format!("  {x} -> {y};\n"));
    }
    out.push_str("}\n");
    out
}

pub fn color(ctx: &Ctx, cmd: ColorCmd) -> Result<()> {
    let format = ctx.format(Format::Json);
    let (f, palette_out) = match cmd {
        ColorCmd::Gap { table, n, out } => {
            let (g, domain) = resolve(&table)?;
            (build(LiftKind::Gap, n, &g, domain)?, out.palette_out)
        }
        ColorCmd::Largeness { table, n, out } => {
            let (g, domain) = resolve(&table)?;
            (build(LiftKind::Largeness, n, &g, domain)?, out.palette_out)
        }
        ColorCmd::Gap3 { table, out } => {
            let (g, domain) = resolve(&table)?;
            (build(LiftKind::Gap3, 3, &g, domain)?, out.palette_out)
        }
        ColorCmd::Tournament { table } => {
            let (g, domain) = resolve(&table)?;
            let t = tournament_from_g(&g, domain)?;
            let text = match format {
                Format::Json => format!("{}\n", json(&t)),
                Format::Dot => tournament_dot(&t),
                f => return Err(unsupported(f, "color tournament")),
            };
            return emit(ctx.output(), &text);
        }
        ColorCmd::Product { inputs, out } => {
            let parts: Vec<Coloring> = inputs.iter().map(|p| read_coloring(p, None)).collect::<Result<_>>()?;
            (product_coloring(&parts)?, out.palette_out)
        }
        ColorCmd::Lift { table, n, kind, out } => {
            let (g, domain) = resolve(&table)?;
            let family: Vec<Coloring> = (1..=g.stages())
                .map(|s| build(kind, n, &g.truncate(s), domain.clone()))
                .collect::<Result<_>>()?;
            let lifted = limit_lift(&StagedColoring::sequence(family)?)?;
            (lifted.coloring, out.palette_out)
        }
    };
    write_coloring(&f, format, ctx.output(), palette_out.as_deref())
}

// ------------------------------------------------------------------ solve

pub fn solve(ctx: &Ctx, cmd: SolveCmd) -> Result<()> {
    match cmd {
        SolveCmd::Thin { input, ell, m, budget } => {
            let f = read_coloring(&input.coloring, input.palette.as_deref())?;
            let budget = budget.resolve(&ctx.config)?;
            match find_thin_set_budgeted(&f, ell, m, &budget).map_err(search_error)? {
                Some(w) => emit_witness(ctx, &f, &w),
                None => Err(fail(Exit::NoneExists, format!("no {m}-set sees at most {ell} colors"))),
            }
        }
        SolveCmd::Extremal {
            n,
            k,
            ell,
            m,
            certificate,
            budget,
        } => {
            let budget = budget.resolve(&ctx.config)?;
            let result = extremal_number(n, k, ell, m, &budget).map_err(search_error)?;
            let text = match ctx.format(Format::Table) {
                Format::Table => format!("{}\n", result.value),
                Format::Json => format!(
                    "{}\n",
                    json(&value!({ "n": n, "k": k, "ell": ell, "m": m, "value": result.value }))
                ),
                f => return Err(unsupported(f, "solve extremal")),
            };
            emit(ctx.output(), &text)?;
            if let Some(path) = certificate {
                match &result.bad_coloring {
                    Some(bad) => write_coloring(bad, Format::Json, Some(&path), None)?,
                    None => eprintln!("note: the bound is trivial; no certificate coloring to write"),
                }
            }
            Ok(())
        }
        SolveCmd::Tournament { input, guard } => {
            let text = read_text(input.as_deref())?;
            let t: Tournament = serde_json::from_str(&text)
                .map_err(|e| fail(Exit::Input, e.to_string()))
                .context("tournament JSON")?;
            let guard = guard.or(ctx.config.guard).unwrap_or(TOURNAMENT_GUARD);
            let best = max_transitive_subtournament(&t, guard).map_err(search_error)?;
            let text = match ctx.format(Format::Json) {
                Format::Json => format!("{}\n", json(&value!({ "H": best, "size": best.len() }))),
                Format::Table => format!("{best:?}\n"),
                f => return Err(unsupported(f, "solve tournament")),
            };
            emit(ctx.output(), &text)
        }
    }
}

fn emit_witness(ctx: &Ctx, f: &Coloring, w: &ThinWitness) -> Result<()> {
    let names = |codes: &[u32]| -> Vec<String> {
        codes
            .iter()
            .map(|&c| f.palette().color(c).expect("palette code").to_string())
            .collect()
    };
    let text = match ctx.format(Format::Json) {
        Format::Json => format!("{}\n", json(w)),
        Format::Table => format!(
            "H = {:?}\nused = {}\navoided = {}\n",
            w.subset,
            names(&w.used).join(" "),
            names(&w.avoided).join(" ")
        ),
        f => return Err(unsupported(f, "solve thin")),
    };
    emit(ctx.output(), &text)
}

// ---------------------------------------------------------------- extract

fn thin_witness(f: &Coloring, source: &WitnessSource, budget: &SearchBudget) -> Result<ThinWitness> {
    let h = if let Some(list) = &source.subset {
        parse_list(list)?
    } else if let Some(path) = &source.witness {
        let text = read_text(Some(path))?;
        let v: serde_json::Value =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        serde_json::from_value(v["H"].clone()).map_err(|_| fail(Exit::Input, "witness file needs an \"H\" array"))?
    } else if let Some(m) = source.m {
        let ell = f.palette().len().saturating_sub(1);
        match find_thin_set_budgeted(f, ell, m, budget).map_err(search_error)? {
            Some(w) => w.subset,
            None => {
                return Err(fail(
                    Exit::NoneExists,
                    format!("no f-thin set of size {m} in the domain"),
                ))
            }
        }
    } else {
        return Err(fail(Exit::Usage, "give the thin set with --subset, --witness or -m"));
    };
    if h.windows(2).any(|w| w[0] >= w[1]) {
        return Err(fail(Exit::Input, "the thin set must be strictly increasing"));
    }
    let used = f
        .used_codes(&h)
        .ok_or_else(|| fail(Exit::Input, "the thin set is not inside the colored domain"))?
        .len();
    Ok(ThinWitness::from_subset(f, h, used).expect("inside the domain"))
}

fn emit_domination(ctx: &Ctx, w: &ThinWitness, d: &DominationWitness) -> Result<()> {
    let text = match ctx.format(Format::Json) {
        Format::Json => format!(
            "{}\n",
            json(&value!({
                "H": w.subset,
                "used": w.used,
                "avoided": w.avoided,
                "kind": "domination",
                "certificate": d.certificate,
                "path": d.path,
            }))
        ),
        Format::Csv => {
            let mut out = csv_row(&["i", "h", "g"]);
            for (i, h, g) in &d.certificate {
                out.push_str(&csv_row(&[i.to_string(), h.to_string(), g.to_string()]));
            }
            out
        }
        Format::Table => {
            let mut out = format!("cases: {}\n", d.path.join(" -> "));
            for (i, h, g) in &d.certificate {
                out.push_str(&format!("h({i}) = {h} >= g({i}) = {g}\n"));
            }
            out
        }
        f => return Err(unsupported(f, "extract")),
    };
    emit(ctx.output(), &text)
}

pub fn extract(ctx: &Ctx, cmd: ExtractCmd) -> Result<()> {
    match cmd {
        ExtractCmd::Transitive { table, source, budget } => {
            let (g, domain) = resolve(&table)?;
            let f = build(LiftKind::Gap3, 3, &g, domain)?;
            let w = thin_witness(&f, &source, &budget.resolve(&ctx.config)?)?;
            let t = extract_transitive(&w, &f, &g).map_err(extract_error)?;
            let text = match ctx.format(Format::Json) {
                Format::Json => format!(
                    "{}\n",
                    json(&value!({
                        "H": t.subset,
                        "kind": t.kind,
                        "avoided": t.avoided,
                        "source": w.subset,
                        "used": w.used,
                    }))
                ),
                Format::Table => format!("H = {:?} ({:?}, avoided {})\n", t.subset, t.kind, t.avoided),
                f => return Err(unsupported(f, "extract transitive")),
            };
            emit(ctx.output(), &text)
        }
        ExtractCmd::Gap {
            table,
            n,
            source,
            budget,
        } => {
            let (g, domain) = resolve(&table)?;
            let f = build(LiftKind::Gap, n, &g, domain)?;
            let w = thin_witness(&f, &source, &budget.resolve(&ctx.config)?)?;
            let d = extract_dominator_gap(&w, &f, &g).map_err(extract_error)?;
            emit_domination(ctx, &w, &d)
        }
        ExtractCmd::Largeness {
            table,
            n,
            source,
            budget,
        } => {
            let (g, domain) = resolve(&table)?;
            let f = build(LiftKind::Largeness, n, &g, domain)?;
            let w = thin_witness(&f, &source, &budget.resolve(&ctx.config)?)?;
            let d = extract_dominator_largeness(&w, &f, &g).map_err(extract_error)?;
            emit_domination(ctx, &w, &d)
        }
    }
}

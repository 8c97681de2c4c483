use ringproof::checker::Statement;
use ringproof::models::{
    count_rings, enumerate_abelian_groups, eval_axiom, find_ring, AxiomSet, CompiledStatement, FiniteRing,
    ModelError, SearchMode,
};
use ringproof::syntax::parse_statement;
use serde::Serialize;

use crate::output::print_json;
use crate::{Context, Status};

#[derive(Clone, Copy, clap::ValueEnum)]
pub enum Mode {
    Count,
    Collect,
    FirstNoncommutative,
    Counterexample,
}

#[derive(clap::Args)]
pub struct Args {
    /// Search rings of exactly this order.
    #[arg(long, conflicts_with = "max_order")]
    order: Option<usize>,
    /// Search all orders from 1 up to this bound.
    #[arg(long)]
    max_order: Option<usize>,
    /// Identity or rule the rings must satisfy, e.g. "x^3 = x" or "x*y = 0 => y*x = 0".
    #[arg(long)]
    axiom: Vec<String>,
    /// Identity to evaluate in each ring found.
    #[arg(long)]
    goal: Option<String>,
    #[arg(long, value_enum, default_value = "count")]
    mode: Mode,
}

#[derive(Serialize)]
struct GoalStatus {
    statement: String,
    holds: bool,
    witness: Vec<(String, u8)>,
}

#[derive(Serialize)]
struct RingJson<'a> {
    order: usize,
    group: &'a str,
    addition: &'a [Vec<u8>],
    multiplication: &'a [Vec<u8>],
    commutative: bool,
    axioms: &'a [String],
    goal: Option<GoalStatus>,
}

#[derive(Serialize)]
struct GroupCount {
    order: usize,
    group: String,
    count: u64,
}

#[derive(Serialize)]
struct Output<'a> {
    mode: &'static str,
    orders: Vec<usize>,
    axioms: &'a [String],
    goal: Option<&'a str>,
    counts: Vec<GroupCount>,
    rings: Vec<RingJson<'a>>,
}

fn parse(text: &str, name: &str) -> Result<Statement, String> {
    let st = parse_statement(text).map_err(|e| format!("`{text}`: {e}"))?;
    Ok(Statement::from_syntax(name, &st))
}

fn ring_json<'a>(ring: &'a FiniteRing, axioms: &'a [String], goal: Option<&Statement>) -> Result<RingJson<'a>, ModelError> {
    let goal = match goal {
        Some(g) => {
            let witness = eval_axiom(ring, g)?;
            Some(GoalStatus {
                statement: g.display(),
                holds: witness.is_none(),
                witness: witness.unwrap_or_default(),
            })
        }
        None => None,
    };
    Ok(RingJson {
        order: ring.order(),
        group: &ring.group.label,
        addition: ring.group.addition_table(),
        multiplication: &ring.mul,
        commutative: ring.is_commutative(),
        axioms,
        goal,
    })
}

pub fn run(args: Args, ctx: &Context) -> Status {
    match execute(&args, ctx) {
        Ok(()) => Status::Ok,
        Err(e) => {
            eprintln!("error: {e}");
            Status::Usage
        }
    }
}

fn execute(args: &Args, ctx: &Context) -> Result<(), String> {
    let orders: Vec<usize> = match (args.order, args.max_order) {
        (Some(m), _) => vec![m],
        (None, Some(k)) => (1..=k).collect(),
        (None, None) => return Err("give --order or --max-order".into()),
    };
    let statements = args
        .axiom
        .iter()
        .enumerate()
        .map(|(i, a)| parse(a, &format!("axiom{}", i + 1)))
        .collect::<Result<Vec<_>, _>>()?;
    let axioms = AxiomSet::new(&statements).map_err(|e| e.to_string())?;
    let axiom_text: Vec<String> = statements.iter().map(Statement::display).collect();
    let goal = args.goal.as_deref().map(|g| parse(g, "goal")).transpose()?;
    let groups = orders
        .iter()
        .map(|&m| enumerate_abelian_groups(m))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?
        .concat();

    let mut counts = Vec::new();
    let mut rings = Vec::new();
    let mode = match args.mode {
        Mode::Count => {
            for g in &groups {
                counts.push(GroupCount {
                    order: g.order,
                    group: g.label.clone(),
                    count: count_rings(g, &axioms),
                });
            }
            "count"
        }
        Mode::Collect => {
            for g in &groups {
                let found = ringproof::models::search_rings(g, &axioms, SearchMode::Collect);
                counts.push(GroupCount {
                    order: g.order,
                    group: g.label.clone(),
                    count: found.count,
                });
                rings.extend(found.rings);
            }
            "collect"
        }
        Mode::FirstNoncommutative => {
            rings.extend(groups.iter().find_map(|g| find_ring(g, &axioms, |r| !r.is_commutative())));
            "first-noncommutative"
        }
        Mode::Counterexample => {
            let goal = goal.as_ref().ok_or("counterexample mode needs --goal")?;
            let compiled = CompiledStatement::new(goal).map_err(|e| e.to_string())?;
            rings.extend(groups.iter().find_map(|g| find_ring(g, &axioms, |r| r.counterexample(&compiled).is_some())));
            "counterexample"
        }
    };
    let ring_views = rings
        .iter()
        .map(|r| ring_json(r, &axiom_text, goal.as_ref()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;

    if ctx.json() {
        print_json(&Output {
            mode,
            orders,
            axioms: &axiom_text,
            goal: args.goal.as_deref(),
            counts,
            rings: ring_views,
        });
        return Ok(());
    }
    for c in &counts {
        println!("order {} {}: {} rings", c.order, c.group, c.count);
    }
    if !matches!(args.mode, Mode::Count) {
        if ring_views.is_empty() {
            println!("none");
        }
        for r in &ring_views {
            print_ring(r);
        }
    }
    Ok(())
}

fn print_ring(r: &RingJson<'_>) {
    println!("ring of order {} on {}{}", r.order, r.group, if r.commutative { "" } else { " (noncommutative)" });
    println!("  multiplication:");
    for row in r.multiplication {
        let cells: Vec<String> = row.iter().map(u8::to_string).collect();
        println!("    {}", cells.join(" "));
    }
    if let Some(g) = &r.goal {
        if g.holds {
            println!("  goal {} holds", g.statement);
        } else {
            let w: Vec<String> = g.witness.iter().map(|(x, e)| format!("{x} = {e}")).collect();
            println!("  goal {} fails at {}", g.statement, w.join(", "));
        }
    }
}

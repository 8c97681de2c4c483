use ringproof::algebra::{normalize, Alphabet};
use ringproof::syntax::parse_expression;
use serde::Serialize;

use crate::output::print_json;
use crate::{Context, Status};

#[derive(clap::Args)]
pub struct Args {
    /// Expression to normalize.
    expression: String,
    /// Generator order, comma separated (default: order of first appearance).
    #[arg(long, value_delimiter = ',')]
    vars: Vec<String>,
}

#[derive(Serialize)]
struct Normalized {
    alphabet: Vec<String>,
    normal_form: String,
    degree: usize,
    terms: usize,
}

pub fn alphabet_for(vars: &[String], found: impl IntoIterator<Item = String>) -> Result<Alphabet, String> {
    let mut names: Vec<String> = vars.to_vec();
    if names.is_empty() {
        for v in found {
            if !names.contains(&v) {
                names.push(v);
            }
        }
    }
    Alphabet::new(names).map_err(|e| e.to_string())
}

pub fn run(args: Args, ctx: &Context) -> Status {
    let expr = match parse_expression(&args.expression) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return Status::Usage;
        }
    };
    let alphabet = match alphabet_for(&args.vars, expr.free_vars()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return Status::Usage;
        }
    };
    let form = match normalize(&expr, &alphabet) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return Status::Usage;
        }
    };
    if ctx.json() {
        print_json(&Normalized {
            alphabet: alphabet.names().map(str::to_string).collect(),
            normal_form: form.display(&alphabet),
            degree: form.degree(),
            terms: form.len(),
        });
    } else {
        println!("{}", form.display(&alphabet));
    }
    Status::Ok
}

//! Parameter-grid parser: comma-separated `name=a..b` ranges whose bounds
//! are integer expressions over earlier names (e.g. `r=3..5,n=3..8,k=1..n-1`).

use std::collections::BTreeMap;

/// One assignment of values to every grid variable, in declaration order.
pub type Assignment = BTreeMap<String, i64>;

#[derive(Debug, Clone)]
pub struct GridSpec {
    ranges: Vec<(String, Expr, Expr)>,
}

#[derive(Debug, Clone)]
pub enum Expr {
    Value(i64),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn eval(&self, env: &Assignment) -> Result<i64, String> {
        match self {
            Expr::Value(v) => Ok(*v),
            Expr::Var(name) => env
                .get(name)
                .copied()
                .ok_or_else(|| format!("unknown name `{name}` in grid bound")),
            Expr::Add(a, b) => Ok(a.eval(env)? + b.eval(env)?),
            Expr::Sub(a, b) => Ok(a.eval(env)? - b.eval(env)?),
        }
    }
}

fn parse_expr(text: &str) -> Result<Expr, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty expression in grid".into());
    }
    // scan for the last top-level +/- that is not a leading sign
    let bytes = text.as_bytes();
    for pos in (1..bytes.len()).rev() {
        let c = bytes[pos] as char;
        if c == '+' || c == '-' {
            let left = parse_expr(&text[..pos])?;
            let right = parse_expr(&text[pos + 1..])?;
            return Ok(if c == '+' {
                Expr::Add(Box::new(left), Box::new(right))
            } else {
                Expr::Sub(Box::new(left), Box::new(right))
            });
        }
    }
    if let Ok(v) = text.parse::<i64>() {
        return Ok(Expr::Value(v));
    }
    if text.chars().all(|c| c.is_ascii_alphabetic()) {
        return Ok(Expr::Var(text.to_string()));
    }
    Err(format!("cannot parse `{text}` as a grid bound"))
}

impl GridSpec {
    pub fn parse(spec: &str) -> Result<GridSpec, String> {
        let mut ranges = Vec::new();
        for part in spec.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (name, bounds) = part
                .split_once('=')
                .ok_or_else(|| format!("grid item `{part}` is not of the form name=a..b"))?;
            let name = name.trim().to_string();
            let (lo, hi) = match bounds.split_once("..") {
                Some((lo, hi)) => (parse_expr(lo)?, parse_expr(hi)?),
                None => {
                    let e = parse_expr(bounds)?;
                    (e.clone(), e)
                }
            };
            ranges.push((name, lo, hi));
        }
        if ranges.is_empty() {
            return Err("empty grid".into());
        }
        Ok(GridSpec { ranges })
    }


    /// Expand to the full list of assignments, in grid order. Assignments
    /// whose bounds evaluate to an empty range are simply absent.
    pub fn expand(&self) -> Result<Vec<Assignment>, String> {
        let mut out = Vec::new();
        let mut env = Assignment::new();
        self.walk(0, &mut env, &mut out)?;
        Ok(out)
    }

    fn walk(
        &self,
        level: usize,
        env: &mut Assignment,
        out: &mut Vec<Assignment>,
    ) -> Result<(), String> {
        if level == self.ranges.len() {
            out.push(env.clone());
            return Ok(());
        }
        let (name, lo, hi) = &self.ranges[level];
        let lo = lo.eval(env)?;
        let hi = hi.eval(env)?;
        for v in lo..=hi {
            env.insert(name.clone(), v);
            self.walk(level + 1, env, out)?;
        }
        env.remove(name);
        Ok(())
    }
}

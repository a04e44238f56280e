//! Parsers for the compact command-line notations.

use anyhow::{anyhow, bail, Context, Result};
use pebblekit::families::FanSpec;
use pebblekit::Graph;

/// `"1,0,3"` or `"[1,0,3]"`.
pub fn parse_counts(s: &str) -> Result<Vec<u32>> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<u32>().with_context(|| format!("bad count {x:?}")))
        .collect()
}

/// `"3"`, `"1..3"` (inclusive) or `"1,2,5"`.
pub fn parse_range(s: &str) -> Result<Vec<u32>> {
    if let Some((a, b)) = s.split_once("..") {
        let a: u32 = a.trim().parse().with_context(|| format!("bad range start in {s:?}"))?;
        let b: u32 = b.trim_start_matches('=').trim().parse().with_context(|| format!("bad range end in {s:?}"))?;
        if a > b {
            bail!("empty range {s:?}");
        }
        return Ok((a..=b).collect());
    }
    parse_counts(s)
}

fn parse_flag(s: &str) -> Result<bool> {
    match s.trim() {
        "1" | "t" | "true" | "y" => Ok(true),
        "0" | "f" | "false" | "n" => Ok(false),
        other => Err(anyhow!("bad overlap flag {other:?}")),
    }
}

/// `"k=3,4,2"` or `"k=3,4,2;overlap=0,1"`; missing overlaps default to 0.
pub fn parse_spec(s: &str) -> Result<FanSpec> {
    let mut k = None;
    let mut overlap = Vec::new();
    for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("expected key=value in {part:?}"))?;
        match key.trim() {
            "k" => k = Some(parse_counts(value)?.into_iter().map(|x| x as usize).collect::<Vec<_>>()),
            "overlap" => {
                overlap = value.split(',').map(parse_flag).collect::<Result<Vec<_>>>()?;
            }
            other => bail!("unknown spec key {other:?}"),
        }
    }
    let k = k.ok_or_else(|| anyhow!("spec {s:?} has no k=..."))?;
    if overlap.is_empty() {
        return Ok(FanSpec::without_overlaps(k));
    }
    Ok(FanSpec::new(k, overlap))
}

/// A named graph family with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Kneser { m: usize, h: usize },
    TwoPath(FanSpec),
    Tree { n: usize, seed: u64 },
    Path(usize),
    Complete(usize),
    Cycle(usize),
}

/// `kneser:5`, `kneser:7,3`, `two-path:k=1,2;overlap=1`, `tree:7`,
/// `tree:7:42`, `path:5`, `complete:4`, `cycle:6`.
pub fn parse_family(s: &str) -> Result<Family> {
    let (name, args) = s.split_once(':').ok_or_else(|| anyhow!("expected family:params, got {s:?}"))?;
    let num = |x: &str| x.trim().parse::<usize>().with_context(|| format!("bad number {x:?} in {s:?}"));
    Ok(match name.trim() {
        "kneser" => match args.split_once(',') {
            Some((m, h)) => Family::Kneser { m: num(m)?, h: num(h)? },
            None => Family::Kneser { m: num(args)?, h: 2 },
        },
        "two-path" => Family::TwoPath(parse_spec(args)?),
        "tree" => match args.split_once(':') {
            Some((n, seed)) => Family::Tree {
                n: num(n)?,
                seed: seed.trim().parse().with_context(|| format!("bad seed in {s:?}"))?,
            },
            None => Family::Tree { n: num(args)?, seed: 0 },
        },
        "path" => Family::Path(num(args)?),
        "complete" => Family::Complete(num(args)?),
        "cycle" => Family::Cycle(num(args)?),
        other => bail!("unknown family {other:?}"),
    })
}

impl Family {
    pub fn build(&self) -> Result<Graph> {
        use pebblekit::families as f;
        Ok(match self {
            Family::Kneser { m, h } => f::kneser(*m, *h)?,
            Family::TwoPath(spec) => f::TwoPath::from_spec(spec)?.into_graph(),
            Family::Tree { n, seed } => f::random_tree(*n, *seed)?.graph().clone(),
            Family::Path(n) => f::path_graph(*n)?,
            Family::Complete(n) => f::complete_graph(*n)?,
            Family::Cycle(n) => f::cycle_graph(*n)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_ranges() {
        assert_eq!(parse_counts("1, 0,3").unwrap(), vec![1, 0, 3]);
        assert_eq!(parse_counts("[2,2]").unwrap(), vec![2, 2]);
        assert!(parse_counts("1,x").is_err());
        assert_eq!(parse_range("1..3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_range("2..=2").unwrap(), vec![2]);
        assert_eq!(parse_range("4").unwrap(), vec![4]);
        assert!(parse_range("3..1").is_err());
    }

    #[test]
    fn families() {
        assert_eq!(parse_family("kneser:5").unwrap(), Family::Kneser { m: 5, h: 2 });
        assert_eq!(parse_family("tree:7:42").unwrap(), Family::Tree { n: 7, seed: 42 });
        assert_eq!(parse_family("kneser:5").unwrap().build().unwrap().n(), 10);
        assert_eq!(parse_family("two-path:k=3,4,2").unwrap().build().unwrap().n(), 14);
        assert!(parse_family("kneser:4").unwrap().build().is_err());
        assert!(parse_family("petersen").is_err());
        assert!(parse_family("wheel:5").is_err());
    }

    #[test]
    fn specs() {
        assert_eq!(parse_spec("k=1").unwrap(), FanSpec::without_overlaps(vec![1]));
        assert_eq!(
            parse_spec("k=3,3,2; overlap=0,1").unwrap(),
            FanSpec::new(vec![3, 3, 2], vec![false, true])
        );
        assert!(parse_spec("overlap=1").is_err());
        assert!(parse_spec("k=1;z=2").is_err());
    }
}

//! Constructor spec strings and the census of small bands.
//!
//! ```text
//! spec := "b5"
//!       | "left_zero:" n | "right_zero:" n | "rect:" r "x" c
//!       | "chain:" k | "boolean:" k | "signs:" k | "free_lrb1:" k
//!       | "prod(" spec "," spec ")" | "unit(" spec ")"
//! ```

use crate::band::MulTable;
use crate::error::{Error, Result};

fn parse_num(s: &str, what: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| Error::Parse(format!("expected a number for {what}, got {s:?}")))
}

/// Splits `inner` at its single top-level comma.
fn split_pair(inner: &str) -> Result<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Ok((&inner[..i], &inner[i + 1..])),
            _ => {}
        }
    }
    Err(Error::Parse(format!("expected two arguments in {inner:?}")))
}

fn call<'a>(s: &'a str, head: &str) -> Option<&'a str> {
    s.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')
}

/// Builds a band from a constructor spec such as `"signs:2"` or
/// `"prod(signs:1,right_zero:2)"`.
pub fn parse_spec(spec: &str) -> Result<MulTable> {
    let s = spec.trim();
    if let Some(inner) = call(s, "prod") {
        let (a, b) = split_pair(inner)?;
        return MulTable::direct_product(&parse_spec(a)?, &parse_spec(b)?);
    }
    if let Some(inner) = call(s, "unit") {
        return MulTable::adjoin_identity(&parse_spec(inner)?);
    }
    let (name, arg) = match s.split_once(':') {
        Some((n, a)) => (n.trim(), Some(a)),
        None => (s, None),
    };
    let need = |what: &str| arg.ok_or_else(|| Error::Parse(format!("{name} needs a parameter ({what})")));
    match name {
        "b5" if arg.is_none() => Ok(MulTable::b5_example()),
        "left_zero" => MulTable::left_zero(parse_num(need("n")?, "n")?),
        "right_zero" => MulTable::right_zero(parse_num(need("n")?, "n")?),
        "rect" => {
            let a = need("RxC")?;
            let (r, c) = a
                .split_once('x')
                .ok_or_else(|| Error::Parse(format!("rect expects RxC, got {a:?}")))?;
            MulTable::rectangular(parse_num(r, "rows")?, parse_num(c, "cols")?)
        }
        "chain" => MulTable::chain(parse_num(need("k")?, "k")?),
        "boolean" => MulTable::boolean(parse_num(need("k")?, "k")?),
        "signs" => MulTable::sign_face_monoid(parse_num(need("k")?, "k")?),
        "free_lrb1" => MulTable::free_lrb_with_identity(parse_num(need("k")?, "k")?),
        _ => Err(Error::Parse(format!("unknown constructor {s:?}"))),
    }
}

/// Reads a band from a JSON table file when `input` names an existing file,
/// otherwise parses it as a constructor spec. Rejects bands above `max_size`.
pub fn load_input(input: &str, max_size: usize) -> Result<MulTable> {
    let path = std::path::Path::new(input);
    let t = if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{input}: {e}")))?;
        MulTable::from_json(&text)?
    } else {
        parse_spec(input)?
    };
    if t.n() > max_size {
        return Err(Error::SizeLimit { what: "band elements", got: t.n(), max: max_size });
    }
    Ok(t)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Lexicographically least relabelling of a table.
fn canonical(rows: &[Vec<usize>], perms: &[Vec<usize>]) -> Vec<usize> {
    let n = rows.len();
    perms
        .iter()
        .map(|p| {
            // p sends old labels to new ones
            let mut inv = vec![0; n];
            for (old, &new) in p.iter().enumerate() {
                inv[new] = old;
            }
            let mut flat = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    flat.push(p[rows[inv[a]][inv[b]]]);
                }
            }
            flat
        })
        .min()
        .expect("at least one permutation")
}

/// All bands with exactly `n` elements up to isomorphism, `1 ≤ n ≤ 4`.
pub fn band_census(n: usize) -> Result<Vec<MulTable>> {
    if !(1..=4).contains(&n) {
        return Err(Error::SizeLimit { what: "census order", got: n, max: 4 });
    }
    let off: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let total = n.pow(off.len() as u32);
    let mut rows = vec![vec![0; n]; n];
    for i in 0..n {
        rows[i][i] = i;
    }
    for code in 0..total {
        let mut c = code;
        for &(a, b) in &off {
            rows[a][b] = c % n;
            c /= n;
        }
        let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|d| rows[rows[a][b]][d] == rows[a][rows[b][d]])));
        if assoc && seen.insert(canonical(&rows, &perms)) {
            out.push(MulTable::new(rows.clone(), None, None)?);
        }
    }
    Ok(out)
}

/// Every band with at most `max_n` elements, up to isomorphism.
pub fn census_up_to(max_n: usize) -> Result<Vec<MulTable>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(band_census(n)?);
    }
    Ok(out)
}

/// The named fixture battery used by the verification suite.
pub const FIXTURES: &[&str] = &[
    "b5",
    "right_zero:2",
    "left_zero:2",
    "rect:2x2",
    "unit(rect:2x2)",
    "unit(rect:2x1)",
    "unit(rect:1x2)",
    "chain:3",
    "boolean:2",
    "signs:1",
    "signs:2",
    "signs:3",
    "free_lrb1:2",
    "free_lrb1:3",
    "prod(signs:1,signs:1)",
    "prod(b5,chain:2)",
    "prod(free_lrb1:2,signs:1)",
    "unit(right_zero:3)",
    "unit(left_zero:2)",
    "prod(right_zero:2,left_zero:2)",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_strings() {
        assert_eq!(parse_spec("b5").unwrap(), MulTable::b5_example());
        assert_eq!(parse_spec("rect:2x3").unwrap().n(), 6);
        assert_eq!(parse_spec("signs:2").unwrap().n(), 9);
        assert_eq!(parse_spec("free_lrb1:2").unwrap().n(), 5);
        assert_eq!(parse_spec("prod(signs:1,signs:1)").unwrap().n(), 9);
        assert_eq!(parse_spec("prod(prod(chain:2,chain:2),right_zero:2)").unwrap().n(), 8);
        assert_eq!(parse_spec(" unit( right_zero:2 ) ").unwrap().n(), 3);
        for bad in ["", "b6", "signs", "signs:x", "rect:2", "prod(b5)", "b5:1", "signs:9"] {
            assert!(parse_spec(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn census_counts() {
        // bands of order 1, 2, 3 up to isomorphism
        let counts: Vec<usize> = (1..=3).map(|n| band_census(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 3, 10]);
        assert!(band_census(3).unwrap().iter().all(|t| t.is_band()));
    }

    #[test]
    fn fixtures_parse() {
        for f in FIXTURES {
            assert!(parse_spec(f).is_ok(), "{f}");
        }
    }
}

//! Plain-text family format.
//!
//! ```text
//! # comments start with '#'
//! 5 1          <- header: n k
//! 0 0 0 1 1    <- one member per line, n integers in [0, k]
//! 0 0 1 0 1
//! ```
//!
//! Blank lines are ignored, except when `n = 0`: the only word is then ε
//! and it is written as an empty line. Output is sorted in `≤` order.

use std::fmt::Write as _;
use std::io::{self, BufRead, Write};

use crate::seq::{Family, Sequence};
use crate::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_family(text: &str) -> Result<Family> {
    let mut family: Option<Family> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        let Some(fam) = family.as_mut() else {
            if line.is_empty() {
                continue;
            }
            family = Some(parse_header(line, line_no)?);
            continue;
        };
        if line.is_empty() && fam.n() > 0 {
            continue;
        }
        let values = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u64>()
                    .map_err(|_| parse_err(line_no, format!("not a non-negative integer: {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if values.len() != fam.n() {
            return Err(parse_err(
                line_no,
                format!("expected {} entries, found {}", fam.n(), values.len()),
            ));
        }
        let k = fam.k();
        let seq = Sequence::from_values(k, values).map_err(|e| match e {
            Error::EntryOutOfRange { position, value, k } => parse_err(
                line_no,
                format!("entry {value} at position {position} is outside [0, {k}]"),
            ),
            other => parse_err(line_no, other.to_string()),
        })?;
        fam.insert(seq)?;
    }
    family.ok_or_else(|| parse_err(0, "missing header line `n k`"))
}

fn parse_header(line: &str, line_no: usize) -> Result<Family> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(parse_err(line_no, format!("header must be `n k`, got {line:?}")));
    }
    let n: usize = toks[0]
        .parse()
        .map_err(|_| parse_err(line_no, format!("bad length n: {:?}", toks[0])))?;
    let k: u8 = toks[1]
        .parse()
        .map_err(|_| parse_err(line_no, format!("bad alphabet ceiling k: {:?}", toks[1])))?;
    if k == 0 {
        return Err(parse_err(line_no, "alphabet ceiling k must be at least 1"));
    }
    Family::new(n, k)
}

pub fn read_family<R: BufRead>(mut reader: R) -> io::Result<Result<Family>> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    Ok(parse_family(&text))
}

pub fn format_family(family: &Family) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", family.n(), family.k());
    for s in family.iter() {
        let mut first = true;
        for v in s.entries() {
            if !first {
                out.push(' ');
            }
            let _ = write!(out, "{v}");
            first = false;
        }
        out.push('\n');
    }
    out
}

pub fn write_family<W: Write>(mut writer: W, family: &Family) -> io::Result<()> {
    writer.write_all(format_family(family).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_example_file() {
        let text = "# δ example\n5 1\n0 0 0 1 1\n\n0 0 1 0 1\n0 0 1 0 1\n";
        let f = parse_family(text).unwrap();
        assert_eq!((f.n(), f.k(), f.len()), (5, 1, 2));
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        let cases = [
            ("2 1\n0 2\n", 2),
            ("2 1\n0 1 1\n", 2),
            ("# c\n2\n", 2),
            ("2 0\n", 1),
            ("2 1\n0 1\nx 1\n", 3),
        ];
        for (text, line) in cases {
            match parse_family(text) {
                Err(Error::Parse { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(parse_family("# only comments\n").is_err());
    }

    #[test]
    fn epsilon_family() {
        let f = parse_family("0 2\n\n").unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(format_family(&f), "0 2\n\n");
        assert_eq!(parse_family("0 2\n").unwrap().len(), 0);
    }

    #[test]
    fn output_is_sorted() {
        let f = parse_family("2 1\n0 0\n1 0\n0 1\n1 1\n").unwrap();
        assert_eq!(format_family(&f), "2 1\n1 1\n0 1\n1 0\n0 0\n");
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..5, k in 1u8..4, picks in proptest::collection::vec(any::<u64>(), 0..20)) {
            let size = (u64::from(k) + 1).pow(n as u32);
            let seqs = picks.iter().map(|p| crate::seq::decode_index(n, k, p % size));
            let f = Family::from_sequences(n, k, seqs).unwrap();
            let text = format_family(&f);
            prop_assert_eq!(parse_family(&text).unwrap(), f);
        }
    }
}

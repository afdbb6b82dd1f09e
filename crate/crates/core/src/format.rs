//! Text instance format.
//!
//! ```text
//! # instance: rotor-4
//! n 5
//!
//! 1
//!
//! 3
//! 1 2 3 4
//! ```
//!
//! After the `n <count>` header, line `i` holds the earlier neighbors of `v_i`
//! separated by whitespace; an empty line means no earlier neighbors. `#`
//! starts a comment. Lines that are only a comment are skipped. A leading
//! `# instance: <name>` comment names the sequence.

use crate::error::{Error, Result};
use crate::graph::ArrivalSequence;

const NAME_TAG: &str = "instance:";

pub fn parse(text: &str) -> Result<ArrivalSequence> {
    let mut name = String::new();
    let mut n: Option<usize> = None;
    let mut arrivals = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let (body, comment) = match raw.find('#') {
            Some(pos) => (&raw[..pos], Some(raw[pos + 1..].trim())),
            None => (raw, None),
        };
        let body = body.trim();
        if body.is_empty() && comment.is_some() {
            if let Some(rest) = comment.and_then(|c| c.strip_prefix(NAME_TAG)) {
                if n.is_none() {
                    name = rest.trim().to_string();
                }
            }
            continue;
        }
        match n {
            None => {
                if body.is_empty() {
                    continue;
                }
                let mut parts = body.split_whitespace();
                let (Some("n"), Some(count), None) = (parts.next(), parts.next(), parts.next()) else {
                    return Err(Error::Parse {
                        line: lineno,
                        reason: format!("expected header `n <count>`, found `{body}`"),
                    });
                };
                let count: usize = count.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    reason: format!("bad vertex count `{count}`"),
                })?;
                n = Some(count);
            }
            Some(count) => {
                if arrivals.len() == count {
                    if body.is_empty() {
                        continue;
                    }
                    return Err(Error::Parse {
                        line: lineno,
                        reason: format!("more than {count} vertex lines"),
                    });
                }
                let neighbors = body
                    .split_whitespace()
                    .map(|tok| {
                        tok.parse::<usize>().map_err(|_| Error::Parse {
                            line: lineno,
                            reason: format!("bad vertex index `{tok}`"),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                arrivals.push(neighbors);
            }
        }
    }

    let Some(count) = n else {
        return Err(Error::Parse {
            line: last_line.max(1),
            reason: "missing `n <count>` header".into(),
        });
    };
    if arrivals.len() != count {
        return Err(Error::Parse {
            line: last_line,
            reason: format!("header declares {count} vertices but {} lines follow", arrivals.len()),
        });
    }
    ArrivalSequence::new(name, arrivals)
}

/// Canonical form: optional name comment, header, one line per vertex with
/// ascending neighbors separated by single spaces, no trailing whitespace.
pub fn serialize(seq: &ArrivalSequence) -> String {
    let mut out = String::new();
    if !seq.name().is_empty() {
        out.push_str("# ");
        out.push_str(NAME_TAG);
        out.push(' ');
        out.push_str(seq.name());
        out.push('\n');
    }
    out.push_str(&format!("n {}\n", seq.n()));
    for entry in seq.arrivals() {
        let line: Vec<String> = entry.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

//! Text formats for permutations and netlists.
//!
//! Permutations: either a `perm <n>` header followed by the `2^n` images
//! (whitespace separated, any line layout) or a truth table of `2^n` lines
//! `<input bits> <output bits>`. Netlists: `lines <w>`, then `role <i>
//! data|ancilla0|ancilla1|borrowed`, then one gate per line with 1-based
//! line numbers. `#` starts a comment in both.

use std::fmt::Write as _;

use crate::circuit::{Circuit, Gate, GateKind, LineRole};
use crate::error::{Error, Result};
use crate::perm::{Permutation, MAX_WIDTH};

/// Non-empty lines with comments removed, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap().trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_width(line: usize, token: Option<&str>, max: u32) -> Result<u32> {
    let token = token.ok_or_else(|| parse_error(line, "missing width"))?;
    match token.parse::<u32>() {
        Ok(w) if (1..=max).contains(&w) => Ok(w),
        _ => Err(parse_error(
            line,
            format!("width {token:?} is not in 1..={max}"),
        )),
    }
}

pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let mut lines = content_lines(text).peekable();
    let &(first_no, first) = lines
        .peek()
        .ok_or_else(|| parse_error(1, "empty permutation file"))?;
    let mut head = first.split_whitespace();
    if head.next() == Some("perm") {
        let width = parse_width(first_no, head.next(), MAX_WIDTH)?;
        let size = 1usize << width;
        let mut map = Vec::with_capacity(size);
        let mut last_line = first_no;
        let tokens = head.map(|t| (first_no, t)).chain(
            lines
                .skip(1)
                .flat_map(|(no, l)| l.split_whitespace().map(move |t| (no, t))),
        );
        for (no, token) in tokens {
            last_line = no;
            if map.len() == size {
                return Err(parse_error(no, format!("more than {size} images")));
            }
            let v = token
                .parse::<u32>()
                .map_err(|_| parse_error(no, format!("{token:?} is not an integer")))?;
            map.push(v);
        }
        if map.len() != size {
            return Err(parse_error(
                last_line,
                format!("expected {size} images, found {}", map.len()),
            ));
        }
        return Permutation::new(width, map);
    }
    parse_truth_table(lines)
}

fn parse_truth_table<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> Result<Permutation> {
    let mut width = None;
    let mut map: Vec<Option<u32>> = Vec::new();
    let mut last_line = 1;
    for (no, line) in lines {
        last_line = no;
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [input, output] = fields[..] else {
            return Err(parse_error(no, "expected `<input bits> <output bits>`"));
        };
        let w = *width.get_or_insert(input.len());
        if w == 0 || w > MAX_WIDTH as usize {
            return Err(parse_error(
                no,
                format!("width {w} is not in 1..={MAX_WIDTH}"),
            ));
        }
        if map.is_empty() {
            map = vec![None; 1 << w];
        }
        let bits = |s: &str| {
            if s.len() != w || !s.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(parse_error(no, format!("{s:?} is not a {w}-bit string")));
            }
            Ok(u32::from_str_radix(s, 2).unwrap())
        };
        let (x, y) = (bits(input)?, bits(output)?);
        if map[x as usize].replace(y).is_some() {
            return Err(parse_error(no, format!("input {input} listed twice")));
        }
    }
    let Some(w) = width else {
        return Err(parse_error(last_line, "empty permutation file"));
    };
    let map: Option<Vec<u32>> = map.into_iter().collect();
    let map = map.ok_or_else(|| {
        parse_error(
            last_line,
            format!("truth table needs all {} inputs", 1 << w),
        )
    })?;
    Permutation::new(w as u32, map)
}

/// `perm <n>` followed by the images, sixteen to a line.
pub fn write_permutation(p: &Permutation) -> String {
    let mut out = format!("perm {}\n", p.width());
    for chunk in p.as_slice().chunks(16) {
        let row: Vec<String> = chunk.iter().map(u32::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_truth_table(p: &Permutation) -> String {
    let w = p.width() as usize;
    let mut out = String::new();
    for (x, &y) in p.as_slice().iter().enumerate() {
        writeln!(out, "{x:0w$b} {y:0w$b}").unwrap();
    }
    out
}

fn parse_role(no: usize, s: &str) -> Result<LineRole> {
    Ok(match s {
        "data" => LineRole::Data,
        "ancilla0" => LineRole::Ancilla(false),
        "ancilla1" => LineRole::Ancilla(true),
        "borrowed" => LineRole::Borrowed,
        _ => return Err(parse_error(no, format!("unknown role {s:?}"))),
    })
}

pub fn parse_netlist(text: &str) -> Result<Circuit> {
    let mut lines = content_lines(text);
    let (no, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, "empty netlist"))?;
    let mut fields = header.split_whitespace();
    if fields.next() != Some("lines") {
        return Err(parse_error(no, "netlist must start with `lines <w>`"));
    }
    let width = parse_width(no, fields.next(), MAX_WIDTH)? as usize;
    if fields.next().is_some() {
        return Err(parse_error(no, "trailing fields after width"));
    }
    let mut roles = vec![LineRole::Data; width];
    let mut seen_role = vec![false; width];
    let mut gates = Vec::new();
    for (no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let index = |s: &str| -> Result<usize> {
            match s.parse::<usize>() {
                Ok(i) if (1..=width).contains(&i) => Ok(i - 1),
                _ => Err(parse_error(
                    no,
                    format!("line index {s:?} is not in 1..={width}"),
                )),
            }
        };
        let (kind, operands) = match fields[0] {
            "role" => {
                if !gates.is_empty() {
                    return Err(parse_error(no, "role declarations must precede gates"));
                }
                let [_, idx, role] = fields[..] else {
                    return Err(parse_error(no, "expected `role <index> <role>`"));
                };
                let l = index(idx)?;
                if std::mem::replace(&mut seen_role[l], true) {
                    return Err(parse_error(no, format!("role of line {idx} given twice")));
                }
                roles[l] = parse_role(no, role)?;
                continue;
            }
            "VTOF" => (GateKind::Vtof, &fields[1..]),
            "FRED" => (GateKind::Fred, &fields[1..]),
            name @ ("CKNOT" | "CKSWAP") => {
                let k = fields
                    .get(1)
                    .and_then(|s| s.parse::<usize>().ok())
                    .filter(|&k| k <= width)
                    .ok_or_else(|| {
                        parse_error(no, format!("{name} needs a control count in 0..={width}"))
                    })?;
                let kind = if name == "CKNOT" {
                    GateKind::CkNot(k)
                } else {
                    GateKind::CkSwap(k)
                };
                (kind, &fields[2..])
            }
            other => return Err(parse_error(no, format!("unknown gate {other:?}"))),
        };
        if operands.len() != kind.arity() {
            return Err(parse_error(
                no,
                format!(
                    "{kind} takes {} line indices, got {}",
                    kind.arity(),
                    operands.len()
                ),
            ));
        }
        let operands = operands
            .iter()
            .map(|s| index(s))
            .collect::<Result<Vec<_>>>()?;
        let gate = Gate::new(kind, operands).map_err(|e| parse_error(no, e.to_string()))?;
        gates.push(gate);
    }
    let mut c = Circuit::new(roles)?;
    c.extend(gates)?;
    Ok(c)
}

/// Canonical netlist text; [`parse_netlist`] reads it back unchanged.
pub fn write_netlist(c: &Circuit) -> String {
    let mut out = format!("lines {}\n", c.width());
    for (i, role) in c.roles().iter().enumerate() {
        writeln!(out, "role {} {role}", i + 1).unwrap();
    }
    for g in c.gates() {
        let name = match g.kind() {
            GateKind::Vtof => "VTOF".to_string(),
            GateKind::Fred => "FRED".to_string(),
            GateKind::CkNot(k) => format!("CKNOT {k}"),
            GateKind::CkSwap(k) => format!("CKSWAP {k}"),
        };
        out.push_str(&name);
        for l in g.lines() {
            write!(out, " {}", l + 1).unwrap();
        }
        out.push('\n');
    }
    out
}

//! Textual and JSON serialization of design matrices.
//!
//! Text layout: a header line
//!
//! ```text
//! order 4; vars 3; group SQ; type 1,1,2
//! ```
//!
//! followed by `order` lines of `order` comma-separated entries, each `0` or
//! `[sign]<gens>*x<i>` with the element written compactly (`-g1g2*x3`,
//! `+x1`).  Variables and generators are 1-indexed in files.  Serialization
//! round-trips bit-exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring_matrix::design::{DesignEntry, DesignMatrix};
use crate::signed_group::{GroupElement, GroupPresentation};

/// Single entry token as used in row lines (`0`, `+x1`, `-g1g2*x3`).
pub fn render_entry(entry: DesignEntry) -> String {
    match entry {
        None => "0".to_string(),
        Some((e, v)) => {
            let mut out = String::new();
            out.push(if e.sign >= 0 { '+' } else { '-' });
            if e.mask != 0 {
                for a in 0..32 {
                    if e.mask >> a & 1 == 1 {
                        out.push('g');
                        out.push_str(&(a + 1).to_string());
                    }
                }
                out.push('*');
            }
            out.push('x');
            out.push_str(&(v + 1).to_string());
            out
        }
    }
}

fn parse_entry(s: &str, generator_count: usize, vars: usize) -> Result<DesignEntry> {
    let bad = |why: &str| Error::Parse(format!("bad entry `{s}`: {why}"));
    let s = s.trim();
    if s == "0" {
        return Ok(None);
    }
    let (sign, rest) = match s.as_bytes().first() {
        Some(b'+') => (1i8, &s[1..]),
        Some(b'-') => (-1i8, &s[1..]),
        Some(_) => (1i8, s),
        None => return Err(bad("empty")),
    };
    let (element_part, var_part) = match rest.split_once('*') {
        Some((e, v)) => (e, v),
        None => ("", rest),
    };
    let mut mask = 0u32;
    if !element_part.is_empty() {
        for piece in element_part.split('g').skip(1) {
            if element_part.as_bytes()[0] != b'g' {
                return Err(bad("element must be a product of generators"));
            }
            let idx: usize = piece.parse().map_err(|_| bad("bad generator index"))?;
            if idx == 0 || idx > generator_count {
                return Err(bad("generator index out of range"));
            }
            let bit = 1u32 << (idx - 1);
            if mask & bit != 0 {
                return Err(bad("repeated generator"));
            }
            mask |= bit;
        }
    }
    let var: usize = var_part
        .strip_prefix('x')
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| bad("missing variable"))?;
    if var == 0 || var > vars {
        return Err(bad("variable index out of range"));
    }
    Ok(Some((GroupElement::new(sign, mask), var - 1)))
}

fn check_shape(order: usize, vars: usize, claimed_type: &[u64]) -> Result<()> {
    if order == 0 {
        return Err(Error::Parse("order must be positive".into()));
    }
    if vars == 0 {
        return Err(Error::Parse("vars must be positive".into()));
    }
    if claimed_type.len() != vars {
        return Err(Error::Parse(format!(
            "type has {} entries but vars is {}",
            claimed_type.len(),
            vars
        )));
    }
    if claimed_type.iter().any(|&u| u == 0) {
        return Err(Error::Parse("type entries must be positive".into()));
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct GroupDto {
    name: String,
    square_signs: Vec<i8>,
}

#[derive(Serialize, Deserialize)]
struct DesignDto {
    order: usize,
    vars: usize,
    group: GroupDto,
    #[serde(rename = "type")]
    claimed_type: Vec<u64>,
    rows: Vec<Vec<String>>,
}

impl DesignMatrix {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "order {}; vars {}; group {}; type {}\n",
            self.order(),
            self.var_count(),
            self.presentation().name,
            self.claimed_type()
                .iter()
                .map(|u| u.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ));
        for r in 0..self.order() {
            let row: Vec<String> = (0..self.order())
                .map(|c| render_entry(self.entry(r, c)))
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty design file".into()))?;

        let mut order = None;
        let mut vars = None;
        let mut group = None;
        let mut claimed_type: Option<Vec<u64>> = None;
        for field in header.split(';') {
            let field = field.trim();
            if let Some(v) = field.strip_prefix("order ") {
                order = Some(v.trim().parse::<usize>().map_err(|_| {
                    Error::Parse(format!("bad order `{v}`"))
                })?);
            } else if let Some(v) = field.strip_prefix("vars ") {
                vars = Some(v.trim().parse::<usize>().map_err(|_| {
                    Error::Parse(format!("bad vars `{v}`"))
                })?);
            } else if let Some(v) = field.strip_prefix("group ") {
                group = Some(GroupPresentation::by_name(v.trim())?);
            } else if let Some(v) = field.strip_prefix("type ") {
                let parsed: std::result::Result<Vec<u64>, _> =
                    v.split(',').map(|t| t.trim().parse::<u64>()).collect();
                claimed_type = Some(parsed.map_err(|_| Error::Parse(format!("bad type `{v}`")))?);
            } else {
                return Err(Error::Parse(format!("unknown header field `{field}`")));
            }
        }
        let order = order.ok_or_else(|| Error::Parse("header missing `order`".into()))?;
        let vars = vars.ok_or_else(|| Error::Parse("header missing `vars`".into()))?;
        let group = group.ok_or_else(|| Error::Parse("header missing `group`".into()))?;
        let claimed_type = claimed_type.ok_or_else(|| Error::Parse("header missing `type`".into()))?;
        check_shape(order, vars, &claimed_type)?;

        let mut out = DesignMatrix::new(group, order, claimed_type);
        let generator_count = out.presentation().generator_count();
        for r in 0..order {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing row {}", r + 1)))?;
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != order {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {}",
                    r + 1,
                    cells.len(),
                    order
                )));
            }
            for (c, cell) in cells.iter().enumerate() {
                let entry = parse_entry(cell, generator_count, vars)?;
                out.set(r, c, entry);
            }
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::Parse("trailing content after last row".into()));
        }
        Ok(out)
    }

    pub fn to_json_string(&self) -> String {
        let dto = DesignDto {
            order: self.order(),
            vars: self.var_count(),
            group: GroupDto {
                name: self.presentation().name.clone(),
                square_signs: self.presentation().square_signs.clone(),
            },
            claimed_type: self.claimed_type().to_vec(),
            rows: (0..self.order())
                .map(|r| {
                    (0..self.order())
                        .map(|c| render_entry(self.entry(r, c)))
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string(&dto).expect("design serialization cannot fail")
    }

    pub fn from_json_str(json: &str) -> Result<Self> {
        let dto: DesignDto = serde_json::from_str(json)?;
        check_shape(dto.order, dto.vars, &dto.claimed_type)?;
        // A known group name must agree with the stored square signs.
        if let Ok(known) = GroupPresentation::by_name(&dto.group.name) {
            if known.square_signs != dto.group.square_signs {
                return Err(Error::Parse(format!(
                    "group `{}` does not match its stored square signs",
                    dto.group.name
                )));
            }
        }
        let group = GroupPresentation::new(dto.group.name, dto.group.square_signs);
        let generator_count = group.generator_count();
        if dto.rows.len() != dto.order {
            return Err(Error::Parse(format!(
                "{} rows, expected {}",
                dto.rows.len(),
                dto.order
            )));
        }
        let mut out = DesignMatrix::new(group, dto.order, dto.claimed_type);
        for (r, row) in dto.rows.iter().enumerate() {
            if row.len() != dto.order {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {}",
                    r + 1,
                    row.len(),
                    dto.order
                )));
            }
            for (c, cell) in row.iter().enumerate() {
                let entry = parse_entry(cell, generator_count, dto.vars)?;
                out.set(r, c, entry);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring_matrix::design::quaternion_example;

    #[test]
    fn text_round_trip_is_bit_exact() {
        let x = quaternion_example();
        let text = x.to_text();
        let back = DesignMatrix::from_text(&text).unwrap();
        assert_eq!(back, x);
        assert_eq!(back.to_text(), text);
        assert!(text.starts_with("order 4; vars 3; group SQ; type 1,1,2\n"));
        assert!(text.contains("+g1g2*x1"));
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let x = quaternion_example();
        let json = x.to_json_string();
        let back = DesignMatrix::from_json_str(&json).unwrap();
        assert_eq!(back, x);
        assert_eq!(back.to_json_string(), json);
    }

    #[test]
    fn zero_entries_round_trip() {
        let pres = GroupPresentation::s_c();
        let i = GroupElement::new(1, 1);
        let mut x = DesignMatrix::new(pres, 2, vec![1]);
        x.set(0, 0, Some((i, 0)));
        x.set(1, 1, Some((i.negate(), 0)));
        let text = x.to_text();
        assert_eq!(text, "order 2; vars 1; group SC; type 1\n+g1*x1,0\n0,-g1*x1\n");
        assert_eq!(DesignMatrix::from_text(&text).unwrap(), x);
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        // Wrong row count.
        assert!(DesignMatrix::from_text("order 2; vars 1; group SR; type 1\n+x1,0\n").is_err());
        // Wrong entry count.
        assert!(
            DesignMatrix::from_text("order 2; vars 1; group SR; type 1\n+x1\n0,+x1\n").is_err()
        );
        // Variable out of range.
        assert!(
            DesignMatrix::from_text("order 1; vars 1; group SR; type 1\n+x2\n").is_err()
        );
        // Generator outside the group.
        assert!(
            DesignMatrix::from_text("order 1; vars 1; group SC; type 1\n+g2*x1\n").is_err()
        );
        // Missing header field.
        assert!(DesignMatrix::from_text("order 1; vars 1; type 1\n+x1\n").is_err());
        // Type length disagrees with vars.
        assert!(
            DesignMatrix::from_text("order 1; vars 2; group SR; type 1\n+x1\n").is_err()
        );
    }

    #[test]
    fn entry_grammar_accepts_optional_plus() {
        let x = DesignMatrix::from_text("order 1; vars 1; group SQ; type 2\ng1g2*x1\n").unwrap();
        assert_eq!(x.entry(0, 0), Some((GroupElement::new(1, 0b11), 0)));
    }
}

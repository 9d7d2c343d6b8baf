//! The decomposition file format: line-oriented text, lowercase hex labels
//! (zero-padded to ceil(n/4) digits), LF line endings.
//!
//! ```text
//! qdec 1
//! n 6
//! kind cycles
//! count 4
//! length 48
//! piece 00 10 30 ...          (count lines)
//! cert                        (optional section)
//! dr 1
//! set 0 1
//! subset 0 0 1                (subset <set-index> <cycle indices>)
//! rep 0 00 05 ...             (one line per cycle, labels sorted)
//! end
//! ```

use std::io::{BufRead, Write};

use crate::cube::{CubeSpec, Label};
use crate::cycles::{Cycle, RepresentedCycle};
use crate::deco::{Ambient, SplitDecomposition};
use crate::error::{Error, Result};
use crate::verify::PieceKind;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertSection {
    pub dr: bool,
    pub sets: Vec<Vec<usize>>,
    pub subsets: Option<Vec<Vec<Vec<usize>>>>,
    pub reps: Vec<Vec<Label>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionFile {
    pub n: u32,
    pub kind: PieceKind,
    pub pieces: Vec<Vec<Label>>,
    pub cert: Option<CertSection>,
}

fn hex_width(n: u32) -> usize {
    ((n + 3) / 4) as usize
}

impl DecompositionFile {
    pub fn from_pieces(n: u32, kind: PieceKind, pieces: Vec<Vec<Label>>) -> DecompositionFile {
        DecompositionFile {
            n,
            kind,
            pieces,
            cert: None,
        }
    }

    /// Package a cube-ambient certificate, keeping all bookkeeping.
    pub fn from_certificate(d: &SplitDecomposition) -> Result<DecompositionFile> {
        let n = match d.ambient {
            Ambient::Cube { n } => n,
            Ambient::Torus { .. } => {
                return Err(Error::InvalidParameter(
                    "only cube decompositions are written to files".into(),
                ))
            }
        };
        let pieces: Vec<Vec<Label>> = d
            .cycles
            .iter()
            .map(|rc| rc.cycle().vertices().to_vec())
            .collect();
        let reps: Vec<Vec<Label>> = d
            .cycles
            .iter()
            .map(|rc| {
                let mut labels = rc.rep_labels();
                labels.sort_unstable();
                labels
            })
            .collect();
        Ok(DecompositionFile {
            n,
            kind: PieceKind::Cycles,
            pieces,
            cert: Some(CertSection {
                dr: d.dr,
                sets: d.splitting_sets.clone(),
                subsets: d.splitting_subsets.clone(),
                reps,
            }),
        })
    }

    /// Rebuild the in-memory certificate. Requires a cert section.
    pub fn to_certificate(&self) -> Result<SplitDecomposition> {
        let cert = self.cert.as_ref().ok_or_else(|| {
            Error::InvalidParameter("file carries no certificate section".into())
        })?;
        if self.kind != PieceKind::Cycles {
            return Err(Error::InvalidParameter(
                "certificates only apply to cycle decompositions".into(),
            ));
        }
        if cert.reps.len() != self.pieces.len() {
            return Err(Error::InvalidParameter(
                "certificate representing sets do not match the pieces".into(),
            ));
        }
        let cycles = self
            .pieces
            .iter()
            .zip(&cert.reps)
            .map(|(walk, reps)| RepresentedCycle::new(Cycle::new(walk.clone()), reps))
            .collect::<Result<Vec<_>>>()?;
        Ok(SplitDecomposition {
            ambient: Ambient::cube(self.n),
            cycles,
            splitting_sets: cert.sets.clone(),
            splitting_subsets: cert.subsets.clone(),
            dr: cert.dr,
        })
    }

    pub fn write(&self, w: &mut impl Write) -> std::io::Result<()> {
        let width = hex_width(self.n);
        writeln!(w, "qdec 1")?;
        writeln!(w, "n {}", self.n)?;
        writeln!(
            w,
            "kind {}",
            match self.kind {
                PieceKind::Cycles => "cycles",
                PieceKind::Paths => "paths",
            }
        )?;
        writeln!(w, "count {}", self.pieces.len())?;
        let length = self.pieces.first().map_or(0, |p| match self.kind {
            PieceKind::Cycles => p.len(),
            PieceKind::Paths => p.len() - 1,
        });
        writeln!(w, "length {length}")?;
        let mut line = String::new();
        for piece in &self.pieces {
            line.clear();
            line.push_str("piece");
            for v in piece {
                line.push(' ');
                line.push_str(&format!("{v:0width$x}"));
            }
            writeln!(w, "{line}")?;
        }
        if let Some(cert) = &self.cert {
            writeln!(w, "cert")?;
            writeln!(w, "dr {}", if cert.dr { 1 } else { 0 })?;
            for set in &cert.sets {
                line.clear();
                line.push_str("set");
                for i in set {
                    line.push(' ');
                    line.push_str(&i.to_string());
                }
                writeln!(w, "{line}")?;
            }
            if let Some(subsets) = &cert.subsets {
                for (si, groups) in subsets.iter().enumerate() {
                    for group in groups {
                        line.clear();
                        line.push_str(&format!("subset {si}"));
                        for i in group {
                            line.push(' ');
                            line.push_str(&i.to_string());
                        }
                        writeln!(w, "{line}")?;
                    }
                }
            }
            for (i, reps) in cert.reps.iter().enumerate() {
                line.clear();
                line.push_str(&format!("rep {i}"));
                for v in reps {
                    line.push(' ');
                    line.push_str(&format!("{v:0width$x}"));
                }
                writeln!(w, "{line}")?;
            }
            writeln!(w, "end")?;
        }
        Ok(())
    }

    pub fn write_to_string(&self) -> String {
        let mut buf = Vec::new();
        self.write(&mut buf).expect("in-memory write cannot fail");
        String::from_utf8(buf).expect("format is ASCII")
    }

    pub fn read(r: impl BufRead) -> Result<DecompositionFile> {
        Parser::new(r).parse()
    }

    pub fn read_from_str(s: &str) -> Result<DecompositionFile> {
        Self::read(s.as_bytes())
    }
}

struct Parser<R> {
    reader: R,
    line_no: usize,
}

impl<R: BufRead> Parser<R> {
    fn new(reader: R) -> Parser<R> {
        Parser { reader, line_no: 0 }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line_no,
            msg: msg.into(),
        }
    }

    fn next_line(&mut self) -> Result<Option<String>> {
        let mut buf = String::new();
        let n = self.reader.read_line(&mut buf)?;
        if n == 0 {
            return Ok(None);
        }
        self.line_no += 1;
        Ok(Some(buf.trim_end_matches(['\n', '\r']).to_string()))
    }

    fn expect_kv<'a>(&self, line: &'a str, key: &str) -> Result<&'a str> {
        line.strip_prefix(key)
            .and_then(|rest| rest.strip_prefix(' '))
            .ok_or_else(|| self.err(format!("expected `{key} ...`, got `{line}`")))
    }

    fn parse(&mut self) -> Result<DecompositionFile> {
        let magic = self
            .next_line()?
            .ok_or_else(|| self.err("empty file"))?;
        if magic != "qdec 1" {
            return Err(self.err(format!("bad header `{magic}`")));
        }
        let line = self.next_line()?.ok_or_else(|| self.err("missing n"))?;
        let n: u32 = self
            .expect_kv(&line, "n")?
            .parse()
            .map_err(|_| self.err("bad dimension"))?;
        CubeSpec::new(n)?;
        let line = self.next_line()?.ok_or_else(|| self.err("missing kind"))?;
        let kind = match self.expect_kv(&line, "kind")? {
            "cycles" => PieceKind::Cycles,
            "paths" => PieceKind::Paths,
            other => return Err(self.err(format!("unknown kind `{other}`"))),
        };
        let line = self.next_line()?.ok_or_else(|| self.err("missing count"))?;
        let count: usize = self
            .expect_kv(&line, "count")?
            .parse()
            .map_err(|_| self.err("bad count"))?;
        let line = self.next_line()?.ok_or_else(|| self.err("missing length"))?;
        let length: usize = self
            .expect_kv(&line, "length")?
            .parse()
            .map_err(|_| self.err("bad length"))?;

        let width = hex_width(n);
        let max = 1u64 << n;
        let parse_labels = |p: &Self, rest: &str| -> Result<Vec<Label>> {
            rest.split(' ')
                .filter(|t| !t.is_empty())
                .map(|tok| {
                    if tok.len() != width || tok.chars().any(|c| c.is_ascii_uppercase()) {
                        return Err(p.err(format!("label `{tok}` is not {width} lowercase hex digits")));
                    }
                    let v = u64::from_str_radix(tok, 16)
                        .map_err(|_| p.err(format!("bad label `{tok}`")))?;
                    if v >= max {
                        return Err(p.err(format!("label `{tok}` outside Q_{n}")));
                    }
                    Ok(v)
                })
                .collect()
        };

        let mut pieces = Vec::with_capacity(count);
        for _ in 0..count {
            let line = self
                .next_line()?
                .ok_or_else(|| self.err("missing piece line"))?;
            let rest = self.expect_kv(&line, "piece")?;
            let labels = parse_labels(self, rest)?;
            let got = match kind {
                PieceKind::Cycles => labels.len(),
                PieceKind::Paths => labels.len().saturating_sub(1),
            };
            if got != length {
                return Err(self.err(format!("piece length {got} does not match header {length}")));
            }
            pieces.push(labels);
        }

        let mut cert = None;
        match self.next_line()? {
            None => {}
            Some(line) if line == "cert" => {
                let line = self.next_line()?.ok_or_else(|| self.err("missing dr"))?;
                let dr = match self.expect_kv(&line, "dr")? {
                    "0" => false,
                    "1" => true,
                    other => return Err(self.err(format!("bad dr flag `{other}`"))),
                };
                let mut sets: Vec<Vec<usize>> = Vec::new();
                let mut subset_lines: Vec<(usize, Vec<usize>)> = Vec::new();
                let mut reps: Vec<(usize, Vec<Label>)> = Vec::new();
                loop {
                    let line = self
                        .next_line()?
                        .ok_or_else(|| self.err("unterminated cert section"))?;
                    if line == "end" {
                        break;
                    }
                    if let Some(rest) = line.strip_prefix("set ") {
                        let idx: Vec<usize> = rest
                            .split(' ')
                            .filter(|t| !t.is_empty())
                            .map(|t| t.parse().map_err(|_| self.err("bad cycle index")))
                            .collect::<Result<_>>()?;
                        sets.push(idx);
                    } else if let Some(rest) = line.strip_prefix("subset ") {
                        let mut it = rest.split(' ').filter(|t| !t.is_empty());
                        let si: usize = it
                            .next()
                            .ok_or_else(|| self.err("subset missing set index"))?
                            .parse()
                            .map_err(|_| self.err("bad set index"))?;
                        let group: Vec<usize> = it
                            .map(|t| t.parse().map_err(|_| self.err("bad cycle index")))
                            .collect::<Result<_>>()?;
                        subset_lines.push((si, group));
                    } else if let Some(rest) = line.strip_prefix("rep ") {
                        let (head, tail) = rest.split_once(' ').unwrap_or((rest, ""));
                        let ci: usize =
                            head.parse().map_err(|_| self.err("bad cycle index"))?;
                        reps.push((ci, parse_labels(self, tail)?));
                    } else {
                        return Err(self.err(format!("unexpected cert line `{line}`")));
                    }
                }
                if reps.len() != count {
                    return Err(self.err(format!(
                        "cert has {} rep lines for {count} pieces",
                        reps.len()
                    )));
                }
                let mut rep_vec: Vec<Vec<Label>> = vec![Vec::new(); count];
                for (ci, labels) in reps {
                    if ci >= count {
                        return Err(self.err(format!("rep index {ci} out of range")));
                    }
                    rep_vec[ci] = labels;
                }
                let subsets = if subset_lines.is_empty() {
                    None
                } else {
                    let mut groups: Vec<Vec<Vec<usize>>> = vec![Vec::new(); sets.len()];
                    for (si, group) in subset_lines {
                        if si >= sets.len() {
                            return Err(self.err(format!("subset set index {si} out of range")));
                        }
                        groups[si].push(group);
                    }
                    Some(groups)
                };
                cert = Some(CertSection {
                    dr,
                    sets,
                    subsets,
                    reps: rep_vec,
                });
                if let Some(extra) = self.next_line()? {
                    if !extra.is_empty() {
                        return Err(self.err(format!("trailing content `{extra}`")));
                    }
                }
            }
            Some(other) => return Err(self.err(format!("unexpected line `{other}`"))),
        }

        Ok(DecompositionFile {
            n,
            kind,
            pieces,
            cert,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> DecompositionFile {
        DecompositionFile::from_pieces(
            2,
            PieceKind::Cycles,
            vec![vec![0b00, 0b01, 0b11, 0b10]],
        )
    }

    #[test]
    fn roundtrip_plain() {
        let f = sample();
        let text = f.write_to_string();
        let g = DecompositionFile::read_from_str(&text).unwrap();
        assert_eq!(f, g);
        assert_eq!(text, g.write_to_string());
    }

    #[test]
    fn header_mismatch_rejected() {
        let text = sample().write_to_string().replace("count 1", "count 2");
        assert!(DecompositionFile::read_from_str(&text).is_err());
    }

    #[test]
    fn label_width_enforced() {
        let text = "qdec 1\nn 6\nkind cycles\ncount 1\nlength 4\npiece 0 1 3 2\n";
        assert!(DecompositionFile::read_from_str(text).is_err());
    }

    #[test]
    fn paths_length_is_edges() {
        let f = DecompositionFile::from_pieces(
            2,
            PieceKind::Paths,
            vec![vec![0b01, 0b00, 0b10], vec![0b01, 0b11, 0b10]],
        );
        let text = f.write_to_string();
        assert!(text.contains("length 2"));
        let g = DecompositionFile::read_from_str(&text).unwrap();
        assert_eq!(f, g);
    }
}

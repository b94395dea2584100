// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Edge-list readers and writers.
//!
//! Input lines are `u v s [extra columns]`, separated by whitespace or commas.
//! Lines starting with `#` or `%` are comments. Gzip-compressed files are
//! detected by their magic bytes and decompressed transparently.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use flate2::read::MultiGzDecoder;

use crate::assignment::Assignment;
use crate::error::{PolarError, Result};
use crate::graph::{BuildOptions, DuplicatePolicy, Sign, SignedGraph};

/// Header directive written by [`write_edge_list`] so trailing isolated
/// vertices survive a round trip through the plain format.
const VERTICES_DIRECTIVE: &str = "# vertices";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeListFormat {
    /// Exactly three columns, non-negative integer ids used as vertex indices.
    #[default]
    Plain,
    /// KONECT `out.*` files: 1-based ids, optional weight/timestamp columns.
    Konect,
    /// SNAP files, including the comma-separated Bitcoin rating dumps.
    Snap,
}

impl std::str::FromStr for EdgeListFormat {
    type Err = PolarError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Self::Plain),
            "konect" => Ok(Self::Konect),
            "snap" => Ok(Self::Snap),
            other => Err(PolarError::invalid(format!("unknown edge-list format '{other}'"))),
        }
    }
}

/// How repeated or reversed occurrences of an unordered pair are merged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SymmetrizePolicy {
    /// Keep the pair only if every occurrence has the same sign.
    #[default]
    Agree,
    /// The first occurrence in file order decides the sign.
    First,
    /// Keep every listed pair; negative if any occurrence is negative.
    Any,
    /// Fail on any repeated pair.
    Strict,
}

impl std::str::FromStr for SymmetrizePolicy {
    type Err = PolarError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "agree" => Ok(Self::Agree),
            "first" => Ok(Self::First),
            "any" => Ok(Self::Any),
            "strict" => Ok(Self::Strict),
            other => Err(PolarError::invalid(format!("unknown symmetrize policy '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    pub format: EdgeListFormat,
    pub symmetrize: SymmetrizePolicy,
}

/// Counters describing what the loader discarded or merged.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub records: usize,
    pub zero_weight_dropped: usize,
    pub self_loops_dropped: usize,
    pub duplicates_merged: usize,
    pub conflicts_dropped: usize,
}

#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: SignedGraph,
    /// Original label of each internal vertex id.
    pub labels: Vec<String>,
    pub report: LoadReport,
}

pub fn open_maybe_gzip(path: &Path) -> Result<Box<dyn BufRead>> {
    let mut file = File::open(path).map_err(|e| PolarError::io(path, e))?;
    let mut magic = [0u8; 2];
    let read = file.read(&mut magic).map_err(|e| PolarError::io(path, e))?;
    let file = File::open(path).map_err(|e| PolarError::io(path, e))?;
    if read == 2 && magic == [0x1f, 0x8b] {
        Ok(Box::new(BufReader::new(MultiGzDecoder::new(file))))
    } else {
        Ok(Box::new(BufReader::new(file)))
    }
}

struct Record {
    u: String,
    v: String,
    weight: f64,
}

fn fields(line: &str) -> impl Iterator<Item = &str> {
    line.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|f| !f.is_empty())
}

pub fn load_edge_list(path: impl AsRef<Path>, opts: LoadOptions) -> Result<LoadedGraph> {
    let path = path.as_ref();
    let reader = open_maybe_gzip(path)?;
    parse_edge_list(reader, path, opts)
}

/// Parses an edge list from any reader; `origin` is only used in error messages.
pub fn parse_edge_list(reader: impl BufRead, origin: &Path, opts: LoadOptions) -> Result<LoadedGraph> {
    let parse_err = |line: usize, message: String| PolarError::Parse {
        path: PathBuf::from(origin),
        line,
        message,
    };
    let mut records = Vec::new();
    let mut declared_n: Option<usize> = None;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| PolarError::io(origin, e))?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix(VERTICES_DIRECTIVE) {
            if opts.format == EdgeListFormat::Plain {
                let n = rest
                    .split_whitespace()
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| parse_err(lineno, "malformed vertices directive".into()))?;
                declared_n = Some(n);
            }
            continue;
        }
        if trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let cols: Vec<&str> = fields(trimmed).collect();
        let ok_width = match opts.format {
            EdgeListFormat::Plain => cols.len() == 3,
            EdgeListFormat::Konect | EdgeListFormat::Snap => cols.len() >= 3,
        };
        if !ok_width {
            return Err(parse_err(
                lineno,
                format!("expected `u v sign`, found {} column(s)", cols.len()),
            ));
        }
        let weight: f64 = cols[2]
            .parse()
            .map_err(|_| parse_err(lineno, format!("invalid sign or weight '{}'", cols[2])))?;
        if weight.is_nan() {
            return Err(parse_err(lineno, "weight is NaN".into()));
        }
        if opts.format == EdgeListFormat::Plain {
            for c in &cols[..2] {
                c.parse::<u32>()
                    .map_err(|_| parse_err(lineno, format!("invalid vertex id '{c}'")))?;
            }
        }
        records.push((
            lineno,
            Record {
                u: cols[0].to_string(),
                v: cols[1].to_string(),
                weight,
            },
        ));
    }

    let (labels, index) = match opts.format {
        EdgeListFormat::Plain => {
            let max_id = records
                .iter()
                .flat_map(|(_, r)| [&r.u, &r.v])
                .map(|s| s.parse::<usize>().unwrap())
                .max();
            let mut n = max_id.map_or(0, |m| m + 1);
            if let Some(d) = declared_n {
                if d < n {
                    return Err(PolarError::VertexOutOfRange { vertex: n - 1, n: d });
                }
                n = d;
            }
            let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            (labels, None)
        }
        _ => {
            let labels = compact_labels(records.iter().flat_map(|(_, r)| [r.u.as_str(), r.v.as_str()]));
            let index: HashMap<String, usize> =
                labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
            (labels, Some(index))
        }
    };
    let resolve = |s: &str| -> usize {
        match &index {
            Some(map) => match map.get(s) {
                Some(&i) => i,
                // numeric labels are stored normalized ("007" -> "7")
                None => map[&s.parse::<u64>().expect("label was numeric").to_string()],
            },
            None => s.parse().unwrap(),
        }
    };

    let mut report = LoadReport {
        records: records.len(),
        ..Default::default()
    };
    // (u, v) with u < v -> (sign, conflicted)
    let mut merged: HashMap<(usize, usize), (Sign, bool)> = HashMap::with_capacity(records.len());
    let mut order: Vec<(usize, usize)> = Vec::with_capacity(records.len());
    for (lineno, r) in &records {
        let (u, v) = (resolve(&r.u), resolve(&r.v));
        let Some(sign) = Sign::of_weight(r.weight) else {
            report.zero_weight_dropped += 1;
            continue;
        };
        if u == v {
            report.self_loops_dropped += 1;
            continue;
        }
        let key = (u.min(v), u.max(v));
        match merged.get_mut(&key) {
            None => {
                merged.insert(key, (sign, false));
                order.push(key);
            }
            Some(entry) => {
                report.duplicates_merged += 1;
                match opts.symmetrize {
                    SymmetrizePolicy::Strict => {
                        return Err(if entry.0 != sign {
                            PolarError::ConflictingSign { u: key.0, v: key.1 }
                        } else {
                            parse_err(*lineno, format!("pair ({}, {}) listed twice", r.u, r.v))
                        });
                    }
                    SymmetrizePolicy::Agree => {
                        if entry.0 != sign {
                            entry.1 = true;
                        }
                    }
                    SymmetrizePolicy::First => {}
                    SymmetrizePolicy::Any => {
                        if sign == Sign::Negative {
                            entry.0 = Sign::Negative;
                        }
                    }
                }
            }
        }
    }
    let mut edges = Vec::with_capacity(order.len());
    for key in order {
        let (sign, conflicted) = merged[&key];
        if conflicted {
            report.conflicts_dropped += 1;
        } else {
            edges.push((key.0, key.1, sign));
        }
    }
    let graph = SignedGraph::build(
        &edges,
        BuildOptions {
            n: Some(labels.len()),
            duplicates: DuplicatePolicy::Reject,
        },
    )?;
    Ok(LoadedGraph {
        graph,
        labels,
        report,
    })
}

/// Distinct labels in ascending order: numerically when every label is an
/// unsigned integer, lexicographically otherwise.
fn compact_labels<'a>(labels: impl Iterator<Item = &'a str>) -> Vec<String> {
    let mut distinct: Vec<&str> = labels.collect();
    distinct.sort_unstable();
    distinct.dedup();
    let numeric: Option<Vec<u64>> = distinct.iter().map(|s| s.parse::<u64>().ok()).collect();
    match numeric {
        Some(mut ids) => {
            ids.sort_unstable();
            ids.dedup();
            ids.into_iter().map(|i| i.to_string()).collect()
        }
        None => distinct.into_iter().map(str::to_string).collect(),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| PolarError::io(path, e))
}

/// Writes the plain format: a vertex-count directive, then every undirected
/// edge once as `u v s` in ascending `(u, v)` order.
pub fn write_edge_list_to(g: &SignedGraph, mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "{VERTICES_DIRECTIVE} {} edges {}", g.n(), g.m())?;
    for (u, v, s) in g.edges() {
        writeln!(out, "{u} {v} {}", s.as_i8())?;
    }
    out.flush()
}

pub fn write_edge_list(g: &SignedGraph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    write_edge_list_to(g, create(path)?).map_err(|e| PolarError::io(path, e))
}

/// Two-column sidecar `internal_id original_label`.
pub fn write_id_map(labels: &[String], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut out = create(path)?;
    (|| {
        for (i, l) in labels.iter().enumerate() {
            writeln!(out, "{i} {l}")?;
        }
        out.flush()
    })()
    .map_err(|e| PolarError::io(path, e))
}

pub fn read_id_map(path: impl AsRef<Path>) -> Result<Vec<String>> {
    let path = path.as_ref();
    let mut labels: Vec<Option<String>> = Vec::new();
    for (idx, line) in open_maybe_gzip(path)?.lines().enumerate() {
        let line = line.map_err(|e| PolarError::io(path, e))?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cols = line.split_whitespace();
        let (Some(id), Some(label)) = (cols.next(), cols.next()) else {
            return Err(PolarError::Parse {
                path: path.into(),
                line: idx + 1,
                message: "expected `internal_id original_label`".into(),
            });
        };
        let id: usize = id.parse().map_err(|_| PolarError::Parse {
            path: path.into(),
            line: idx + 1,
            message: format!("invalid internal id '{id}'"),
        })?;
        if labels.len() <= id {
            labels.resize(id + 1, None);
        }
        labels[id] = Some(label.to_string());
    }
    labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| l.ok_or_else(|| PolarError::invalid(format!("id map has no entry for {i}"))))
        .collect()
}

/// Writes `vertex label` lines for every vertex, label in {1, -1, 0}.
/// When `labels` is given, vertices are written by their original label.
pub fn write_assignment(x: &Assignment, labels: Option<&[String]>, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut out = create(path)?;
    (|| {
        for (i, &v) in x.as_slice().iter().enumerate() {
            match labels {
                Some(l) => writeln!(out, "{} {v}", l[i])?,
                None => writeln!(out, "{i} {v}")?,
            }
        }
        out.flush()
    })()
    .map_err(|e| PolarError::io(path, e))
}

/// Reads a `vertex label` file over internal ids `0..n`; unlisted vertices are neutral.
pub fn read_assignment(path: impl AsRef<Path>, n: usize) -> Result<Assignment> {
    let path = path.as_ref();
    let mut x = vec![0i8; n];
    for (idx, line) in open_maybe_gzip(path)?.lines().enumerate() {
        let line = line.map_err(|e| PolarError::io(path, e))?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') || t.starts_with('%') {
            continue;
        }
        let err = |message: String| PolarError::Parse {
            path: path.into(),
            line: idx + 1,
            message,
        };
        let cols: Vec<&str> = fields(t).collect();
        if cols.len() != 2 {
            return Err(err("expected `vertex label`".into()));
        }
        let v: usize = cols[0].parse().map_err(|_| err(format!("invalid vertex '{}'", cols[0])))?;
        let label: i8 = cols[1]
            .parse()
            .ok()
            .filter(|l| (-1..=1).contains(l))
            .ok_or_else(|| err(format!("invalid label '{}'", cols[1])))?;
        if v >= n {
            return Err(PolarError::VertexOutOfRange { vertex: v, n });
        }
        x[v] = label;
    }
    Assignment::new(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn parse(text: &str, format: EdgeListFormat, symmetrize: SymmetrizePolicy) -> Result<LoadedGraph> {
        parse_edge_list(
            Cursor::new(text.as_bytes()),
            Path::new("<mem>"),
            LoadOptions { format, symmetrize },
        )
    }

    #[test]
    fn plain_two_edges() {
        let g = parse("0 1 1\n1 2 -1", EdgeListFormat::Plain, SymmetrizePolicy::Agree)
            .unwrap()
            .graph;
        assert_eq!(g.n(), 3);
        assert_eq!((g.m_pos(), g.m_neg()), (1, 1));
    }

    #[test]
    fn comments_commas_and_line_numbers() {
        let g = parse("% konect header\n# comment\n0,1,1\n\n2 3 -1\n", EdgeListFormat::Plain, Default::default())
            .unwrap()
            .graph;
        assert_eq!(g.m(), 2);

        let err = parse("0 1 1\n0 x 1\n", EdgeListFormat::Plain, Default::default()).unwrap_err();
        assert!(matches!(err, PolarError::Parse { line: 2, .. }), "{err}");
        let err = parse("0 1 1 5\n", EdgeListFormat::Plain, Default::default()).unwrap_err();
        assert!(matches!(err, PolarError::Parse { line: 1, .. }));
    }

    #[test]
    fn snap_ratings_map_to_signs_and_ids_compact() {
        let text = "# bitcoin otc\n6,2,4,1289241911\n6,5,2,1289241941\n1,15,-1,1289243140\n7,5,0,1289245000\n";
        let loaded = parse(text, EdgeListFormat::Snap, Default::default()).unwrap();
        assert_eq!(loaded.labels, vec!["1", "2", "5", "6", "7", "15"]);
        assert_eq!(loaded.graph.n(), 6);
        assert_eq!(loaded.graph.m(), 3);
        assert_eq!(loaded.report.zero_weight_dropped, 1);
        // 6 -> internal 3, 2 -> internal 1
        assert_eq!(loaded.graph.edge_sign(3, 1), Some(Sign::Positive));
        assert_eq!(loaded.graph.edge_sign(0, 5), Some(Sign::Negative));
    }

    #[test]
    fn symmetrize_policies() {
        let text = "1 2 1\n2 1 -1\n3 4 1\n4 3 1\n5 1 -1\n";
        let agree = parse(text, EdgeListFormat::Konect, SymmetrizePolicy::Agree).unwrap();
        assert_eq!(agree.graph.m(), 2);
        assert_eq!(agree.report.conflicts_dropped, 1);
        assert_eq!(agree.report.duplicates_merged, 2);

        let first = parse(text, EdgeListFormat::Konect, SymmetrizePolicy::First).unwrap();
        assert_eq!(first.graph.m(), 3);
        assert_eq!(first.graph.edge_sign(0, 1), Some(Sign::Positive));

        let any = parse(text, EdgeListFormat::Konect, SymmetrizePolicy::Any).unwrap();
        assert_eq!(any.graph.edge_sign(0, 1), Some(Sign::Negative));

        let strict = parse(text, EdgeListFormat::Konect, SymmetrizePolicy::Strict);
        assert!(matches!(strict, Err(PolarError::ConflictingSign { u: 0, v: 1 })));
    }

    #[test]
    fn self_loops_are_dropped_and_counted() {
        let loaded = parse("1 1 1\n1 2 -1\n", EdgeListFormat::Konect, Default::default()).unwrap();
        assert_eq!(loaded.report.self_loops_dropped, 1);
        assert_eq!(loaded.graph.m(), 1);
    }

    #[test]
    fn export_round_trip_keeps_isolated_vertices() {
        let g = SignedGraph::build(
            &[(0, 3, Sign::Negative), (1, 2, Sign::Positive)],
            BuildOptions {
                n: Some(6),
                ..Default::default()
            },
        )
        .unwrap();
        let mut buf = Vec::new();
        write_edge_list_to(&g, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "# vertices 6 edges 2\n0 3 -1\n1 2 1\n");
        let back = parse(&text, EdgeListFormat::Plain, Default::default()).unwrap().graph;
        assert_eq!(back, g);
    }

    #[test]
    fn gzip_is_transparent() {
        use flate2::write::GzEncoder;
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.txt.gz");
        let mut enc = GzEncoder::new(File::create(&path).unwrap(), flate2::Compression::default());
        enc.write_all(b"0 1 1\n1 2 -1\n").unwrap();
        enc.finish().unwrap();
        let g = load_edge_list(&path, LoadOptions::default()).unwrap().graph;
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn id_map_and_assignment_files() {
        let dir = tempfile::tempdir().unwrap();
        let labels: Vec<String> = ["10", "20", "u3"].iter().map(|s| s.to_string()).collect();
        let p = dir.path().join("ids");
        write_id_map(&labels, &p).unwrap();
        assert_eq!(read_id_map(&p).unwrap(), labels);

        let x = Assignment::new(vec![1, -1, 0]).unwrap();
        let p = dir.path().join("x");
        write_assignment(&x, None, &p).unwrap();
        assert_eq!(read_assignment(&p, 3).unwrap(), x);
        assert!(read_assignment(&p, 2).is_err());
    }
}

//! Text formats: ASCII PGM (`P2`), LFS space listings, VOL volumes and the
//! hex virtual-cell sidecar.

use std::fmt::Write as _;

use alftop_core::{AdjacencyError, DigitalImage, GrayImage2D, LabelError, LfSpace, SpaceError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("input is not valid UTF-8")]
    Encoding,
    #[error("unsupported magic {0:?}")]
    UnsupportedMagic(String),
    #[error("malformed header: {0}")]
    Header(String),
    #[error("bad token {0:?}")]
    BadToken(String),
    #[error("truncated data: expected {expected} values, got {got}")]
    Truncated { expected: usize, got: usize },
    #[error("unexpected data after {0} values")]
    Trailing(usize),
    #[error("value {value} exceeds maximum {max}")]
    ValueTooLarge { value: u64, max: u64 },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Image(#[from] AdjacencyError),
    #[error(transparent)]
    Label(#[from] LabelError),
}

/// Strips `#` comments and splits on whitespace.
fn tokens(text: &str) -> Vec<&str> {
    text.lines()
        .flat_map(|line| line.split('#').next().unwrap_or("").split_whitespace())
        .collect()
}

fn utf8(bytes: &[u8]) -> Result<&str, ParseError> {
    std::str::from_utf8(bytes).map_err(|_| ParseError::Encoding)
}

fn number(token: &str) -> Result<u64, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::BadToken(token.to_string()))
}

fn header_count(tok: Option<&&str>, what: &str) -> Result<usize, ParseError> {
    let tok = tok.ok_or_else(|| ParseError::Header(format!("missing {what}")))?;
    let v = number(tok)?;
    if v == 0 {
        return Err(ParseError::Header(format!("{what} must be positive")));
    }
    usize::try_from(v).map_err(|_| ParseError::Header(format!("{what} too large")))
}

/// Reads exactly `count` values no larger than `max`.
fn body(values: &[&str], count: usize, max: u64) -> Result<Vec<u64>, ParseError> {
    if values.len() < count {
        return Err(ParseError::Truncated {
            expected: count,
            got: values.len(),
        });
    }
    if values.len() > count {
        return Err(ParseError::Trailing(count));
    }
    values
        .iter()
        .map(|t| {
            let v = number(t)?;
            if v > max {
                Err(ParseError::ValueTooLarge { value: v, max })
            } else {
                Ok(v)
            }
        })
        .collect()
}

pub fn parse_pgm(bytes: &[u8]) -> Result<GrayImage2D, ParseError> {
    let toks = tokens(utf8(bytes)?);
    match toks.first() {
        Some(&"P2") => {}
        Some(m) => return Err(ParseError::UnsupportedMagic(m.to_string())),
        None => return Err(ParseError::Header("empty input".into())),
    }
    let width = header_count(toks.get(1), "width")?;
    let height = header_count(toks.get(2), "height")?;
    let maxval = header_count(toks.get(3), "maxval")? as u64;
    if maxval > 65535 {
        return Err(ParseError::Header(format!("maxval {maxval} above 65535")));
    }
    let count = width
        .checked_mul(height)
        .ok_or_else(|| ParseError::Header("image too large".into()))?;
    let values = body(toks.get(4..).unwrap_or(&[]), count, maxval)?;
    Ok(GrayImage2D::new(
        width,
        height,
        values.into_iter().map(|v| v as u16).collect(),
    )?)
}

pub fn write_pgm(img: &GrayImage2D) -> String {
    let maxval = img.labels().iter().copied().max().unwrap_or(0).max(1);
    let mut out = format!("P2\n{} {}\n{maxval}\n", img.width(), img.height());
    for row in img.labels().chunks(img.width()) {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// `LFS <n>` followed by one `<id>: <ids...>` line per element.
pub fn parse_lfs(bytes: &[u8]) -> Result<LfSpace, ParseError> {
    let text = utf8(bytes)?;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| ParseError::Header("empty input".into()))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    match head.as_slice() {
        ["LFS", n] => {
            let n = header_count(Some(n), "element count")?;
            let mut sn: Vec<Option<Vec<usize>>> = vec![None; n];
            for (line, content) in lines {
                let bad = |message: String| ParseError::Line { line, message };
                let (id, rest) = content
                    .split_once(':')
                    .ok_or_else(|| bad("expected `<id>: <ids>`".into()))?;
                let id = parse_id(id.trim(), n).map_err(bad)?;
                if sn[id].is_some() {
                    return Err(bad(format!("element {id} listed twice")));
                }
                let members = rest
                    .split_whitespace()
                    .map(|t| parse_id(t, n))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(bad)?;
                sn[id] = Some(members);
            }
            let sn = sn
                .into_iter()
                .enumerate()
                .map(|(i, s)| {
                    s.ok_or_else(|| ParseError::Header(format!("no line for element {i}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(LfSpace::new(sn)?)
        }
        [magic, ..] if *magic != "LFS" => Err(ParseError::UnsupportedMagic(magic.to_string())),
        _ => Err(ParseError::Header(format!(
            "expected `LFS <count>`, got {header:?}"
        ))),
    }
}

fn parse_id(token: &str, n: usize) -> Result<usize, String> {
    let id: usize = token
        .parse()
        .map_err(|_| format!("bad element id {token:?}"))?;
    if id >= n {
        return Err(format!("element id {id} outside 0..{n}"));
    }
    Ok(id)
}

pub fn write_lfs(space: &LfSpace) -> String {
    let mut out = format!("LFS {}\n", space.len());
    for e in space.elements() {
        let mut ids: Vec<usize> = space
            .smallest_neighborhood(e)
            .expect("element of the space")
            .iter()
            .map(|x| x.0)
            .collect();
        ids.sort_unstable();
        let ids: Vec<String> = ids.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(out, "{}: {}", e.0, ids.join(" "));
    }
    out
}

/// `VOL <dx> <dy> <dz>` then `dz` slices of `dy` rows of `dx` 0/1 values.
pub fn parse_vol(bytes: &[u8]) -> Result<DigitalImage, ParseError> {
    let toks = tokens(utf8(bytes)?);
    match toks.first() {
        Some(&"VOL") => {}
        Some(m) => return Err(ParseError::UnsupportedMagic(m.to_string())),
        None => return Err(ParseError::Header("empty input".into())),
    }
    let dims = vec![
        header_count(toks.get(1), "dx")?,
        header_count(toks.get(2), "dy")?,
        header_count(toks.get(3), "dz")?,
    ];
    let count = dims
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .ok_or_else(|| ParseError::Header("volume too large".into()))?;
    let values = body(toks.get(4..).unwrap_or(&[]), count, 1)?;
    Ok(DigitalImage::new(
        dims,
        values.into_iter().map(|v| v == 1).collect(),
    )?)
}

/// Writes a VOL file; images with fewer than three axes get unit extents.
pub fn write_vol(img: &DigitalImage) -> String {
    let mut dims = img.dims().to_vec();
    assert!(dims.len() <= 3, "VOL holds at most three axes");
    dims.resize(3, 1);
    let mut out = format!("VOL {} {} {}\n", dims[0], dims[1], dims[2]);
    for row in img.mask().chunks(dims[0]) {
        let line: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// One five-bit virtual-cell word per pixel, row-major.
pub fn parse_hex_sidecar(bytes: &[u8], width: usize, height: usize) -> Result<Vec<u8>, ParseError> {
    let toks = tokens(utf8(bytes)?);
    Ok(body(&toks, width * height, 0x1f)?
        .into_iter()
        .map(|v| v as u8)
        .collect())
}

pub fn write_hex_sidecar(bits: &[u8], width: usize) -> String {
    let mut out = String::new();
    for row in bits.chunks(width) {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Loads a 2D PGM (thresholded at `threshold`) or a VOL volume by magic.
pub fn parse_image(bytes: &[u8], threshold: u16) -> Result<DigitalImage, ParseError> {
    let text = utf8(bytes)?;
    match tokens(text).first() {
        Some(&"VOL") => parse_vol(bytes),
        Some(&"P2") => Ok(parse_pgm(bytes)?.threshold(threshold)),
        Some(m) => Err(ParseError::UnsupportedMagic(m.to_string())),
        None => Err(ParseError::Header("empty input".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alftop_core::fixtures;

    #[test]
    fn pgm_examples() {
        let img = parse_pgm(b"P2 2 2 255\n0 255 255 0\n").unwrap();
        assert_eq!(img.labels(), &[0, 255, 255, 0]);
        assert_eq!((img.width(), img.height()), (2, 2));
        let one = parse_pgm(b"P2 1 1 1\n1").unwrap();
        assert_eq!(one.labels(), &[1]);
        assert!(matches!(
            parse_pgm(b"P3 1 1 1 1"),
            Err(ParseError::UnsupportedMagic(_))
        ));
    }

    #[test]
    fn pgm_errors() {
        assert!(matches!(
            parse_pgm(b"P2 2 2 255\n0 1 2"),
            Err(ParseError::Truncated { .. })
        ));
        assert!(matches!(
            parse_pgm(b"P2 1 1 7\n8"),
            Err(ParseError::ValueTooLarge { .. })
        ));
        assert!(matches!(
            parse_pgm(b"P2 1 1 70000\n8"),
            Err(ParseError::Header(_))
        ));
        assert!(matches!(
            parse_pgm(b"P2 1 1 9\n1 2"),
            Err(ParseError::Trailing(1))
        ));
        assert!(parse_pgm(b"P2 # c\n1 1 # size\n9\n3 # v\n").is_ok());
    }

    #[test]
    fn lfs_examples() {
        let k5 = fixtures::k5();
        assert_eq!(parse_lfs(write_lfs(&k5).as_bytes()).unwrap(), k5);
        assert_eq!(parse_lfs(b"LFS 1\n0: 0\n").unwrap(), fixtures::singleton());
        assert!(matches!(
            parse_lfs(b"LFS 2\n0: 1\n1: 1\n"),
            Err(ParseError::Space(SpaceError::NotReflexive(_)))
        ));
        assert!(matches!(
            parse_lfs(b"LFS 2\n0: 0 2\n1: 1\n"),
            Err(ParseError::Line { line: 2, .. })
        ));
        assert!(parse_lfs(b"LFS 2\n0: 0\n").is_err());
        assert!(parse_lfs(b"LFS 1\n0: 0\n0: 0\n").is_err());
    }

    #[test]
    fn vol_examples() {
        let img = parse_vol(b"VOL 2 1 2\n1 0\n0 1\n").unwrap();
        assert_eq!(img.dims(), &[2, 1, 2]);
        assert_eq!(img.foreground_points(), vec![vec![0, 0, 0], vec![1, 0, 1]]);
        assert!(matches!(
            parse_vol(b"VOL 2 1 1\n1 2"),
            Err(ParseError::ValueTooLarge { .. })
        ));
        assert!(matches!(
            parse_vol(b"VOL 2 2 1\n1 0 1"),
            Err(ParseError::Truncated { .. })
        ));
    }

    #[test]
    fn sidecar_bounds() {
        assert_eq!(parse_hex_sidecar(b"0 31\n", 2, 1).unwrap(), vec![0, 31]);
        assert!(parse_hex_sidecar(b"0 32\n", 2, 1).is_err());
    }
}

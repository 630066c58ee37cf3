//! Bank files (JSON), PGM images and coefficient bundles.

use crate::analysis::PropertyReport;
use crate::construct::{CanonicalPair, FilterBank};
use crate::lattice::{Dilation, Filter2D};
use crate::scalar::C64;
use crate::transform::{CoeffPyramid, ImageGrid, LevelInfo};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Lowpass,
    Highpass,
}

/// `re[i][j]` and `im[i][j]` hold the coefficient at (support_min[0] + i, support_min[1] + j).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FilterRecord {
    pub role: Role,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_partner: Option<usize>,
    pub support_min: [i64; 2],
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    pub first: usize,
    pub second: usize,
    pub shift: [i64; 2],
    pub xi: [i64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BankFileV1 {
    pub format_version: u32,
    pub family: String,
    pub params: BTreeMap<String, String>,
    pub dilation: [[i64; 2]; 2],
    pub filters: Vec<FilterRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub canonical_pairs: Vec<PairRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<serde_json::Value>,
}

fn record(f: &Filter2D<C64>, role: Role, partner: Option<usize>) -> FilterRecord {
    let [r, c] = f.shape();
    let rows = |g: &dyn Fn(&C64) -> f64| -> Vec<Vec<f64>> {
        (0..r).map(|i| (0..c).map(|j| g(&f.data()[i * c + j])).collect()).collect()
    };
    FilterRecord { role, canonical_partner: partner, support_min: f.support_min(), re: rows(&|v| v.re), im: rows(&|v| v.im) }
}

impl BankFileV1 {
    pub fn from_bank(bank: &FilterBank<C64>, report: Option<&PropertyReport>) -> Result<Self> {
        let partner = |i: usize| {
            bank.canonical_pairs.iter().find_map(|p| match (p.first == i, p.second == i) {
                (true, _) => Some(p.second),
                (_, true) => Some(p.first),
                _ => None,
            })
        };
        let filters = bank
            .filters()
            .iter()
            .enumerate()
            .map(|(i, f)| record(f, if i == 0 { Role::Lowpass } else { Role::Highpass }, partner(i)))
            .collect();
        let report = match report {
            Some(r) => Some(serde_json::to_value(r).map_err(|e| Error::Parse(e.to_string()))?),
            None => None,
        };
        Ok(BankFileV1 {
            format_version: 1,
            family: bank.family.clone(),
            params: bank.params.clone(),
            dilation: bank.dilation.m,
            filters,
            canonical_pairs: bank
                .canonical_pairs
                .iter()
                .map(|p| PairRecord { first: p.first, second: p.second, shift: p.shift, xi: p.xi })
                .collect(),
            report,
        })
    }

    pub fn to_bank(&self) -> Result<FilterBank<C64>> {
        if self.format_version != 1 {
            return Err(Error::Parse(format!("unsupported format_version {}", self.format_version)));
        }
        let dilation = Dilation::new(self.dilation).map_err(|e| Error::Parse(e.to_string()))?;
        if self.filters.is_empty() || self.filters[0].role != Role::Lowpass {
            return Err(Error::Parse("the first filter must be the low-pass filter".into()));
        }
        if self.filters[1..].iter().any(|f| f.role != Role::Highpass) {
            return Err(Error::Parse("only the first filter may be low-pass".into()));
        }
        let mut fs = Vec::new();
        for (i, f) in self.filters.iter().enumerate() {
            let rows = f.re.len();
            let cols = f.re.first().map_or(0, |r| r.len());
            if f.im.len() != rows
                || f.re.iter().chain(&f.im).any(|r| r.len() != cols)
                || rows == 0
                || cols == 0
            {
                return Err(Error::Parse(format!("filter {i}: re/im arrays are not matching rectangles")));
            }
            let data = (0..rows * cols).map(|k| C64::new(f.re[k / cols][k % cols], f.im[k / cols][k % cols])).collect();
            fs.push(Filter2D::from_dense(f.support_min, [rows, cols], data));
        }
        let n = fs.len();
        let pairs: Vec<CanonicalPair> = self
            .canonical_pairs
            .iter()
            .map(|p| CanonicalPair { first: p.first, second: p.second, shift: p.shift, xi: p.xi })
            .collect();
        if pairs.iter().any(|p| p.first >= n || p.second >= n) {
            return Err(Error::Parse("canonical pair index out of range".into()));
        }
        let mut it = fs.into_iter();
        Ok(FilterBank {
            lowpass: it.next().expect("nonempty"),
            highpass: it.collect(),
            dilation,
            canonical_pairs: pairs,
            family: self.family.clone(),
            params: self.params.clone(),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn save_bank(path: &Path, bank: &FilterBank<C64>, report: Option<&PropertyReport>) -> Result<()> {
    std::fs::write(path, BankFileV1::from_bank(bank, report)?.to_json()?)?;
    Ok(())
}

pub fn load_bank(path: &Path) -> Result<FilterBank<C64>> {
    BankFileV1::from_json(&std::fs::read_to_string(path)?)?.to_bank()
}

/// Reads P2 or P5 (8- or 16-bit) images as real samples.
pub fn read_pgm(bytes: &[u8]) -> Result<ImageGrid> {
    let mut pos = 0;
    let mut token = || -> Result<String> {
        loop {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b'#' {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
                continue;
            }
            break;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(Error::Parse("truncated PGM header".into()));
        }
        Ok(String::from_utf8_lossy(&bytes[start..pos]).into_owned())
    };
    let magic = token()?;
    let num = |s: String| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad PGM number {s:?}")));
    let w = num(token()?)?;
    let h = num(token()?)?;
    let maxval = num(token()?)?;
    if maxval == 0 || maxval > 65535 {
        return Err(Error::Parse(format!("bad PGM maxval {maxval}")));
    }
    let samples: Vec<f64> = match magic.as_str() {
        "P2" => (0..w * h).map(|_| token().and_then(|t| num(t)).map(|v| v as f64)).collect::<Result<_>>()?,
        "P5" => {
            let body = &bytes[(pos + 1).min(bytes.len())..];
            let bpp = if maxval < 256 { 1 } else { 2 };
            if body.len() < w * h * bpp {
                return Err(Error::Parse("truncated PGM raster".into()));
            }
            (0..w * h)
                .map(|i| {
                    if bpp == 1 {
                        body[i] as f64
                    } else {
                        u16::from_be_bytes([body[2 * i], body[2 * i + 1]]) as f64
                    }
                })
                .collect()
        }
        m => return Err(Error::Parse(format!("unsupported PGM magic {m:?}"))),
    };
    ImageGrid::from_real(w, h, &samples).map_err(|e| Error::Parse(e.to_string()))
}

/// Writes the real part as P2, rounded and clamped to [0, maxval].
pub fn write_pgm(img: &ImageGrid, maxval: u16) -> String {
    let mut s = format!("P2\n{} {}\n{}\n", img.width, img.height, maxval);
    for r in 0..img.height {
        let row: Vec<String> = (0..img.width)
            .map(|c| (img.at(r, c).re.round().clamp(0.0, maxval as f64) as u32).to_string())
            .collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandEntry {
    /// 1-based level; 0 marks the deepest low-pass band.
    pub level: usize,
    pub filter: usize,
    pub count: usize,
    /// Offset into the payload, in float64 values.
    pub offset: usize,
}

/// JSON sidecar of a coefficient bundle. Complex bundles store each band's real parts
/// followed by its imaginary parts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BundleHeader {
    pub format_version: u32,
    pub width: usize,
    pub height: usize,
    pub dilation: [[i64; 2]; 2],
    pub n_filters: usize,
    pub complex: bool,
    pub redundancy: f64,
    pub levels: Vec<LevelInfo>,
    pub bands: Vec<BandEntry>,
    pub payload: String,
}

/// Writes `<stem>.json` and `<stem>.bin`; returns both paths.
pub fn write_bundle(pyr: &CoeffPyramid, stem: &Path) -> Result<(PathBuf, PathBuf)> {
    let complex = pyr.levels.iter().flatten().flatten().chain(&pyr.lowpass).any(|v| v.im != 0.0);
    let mut payload: Vec<u8> = Vec::new();
    let mut bands = Vec::new();
    let mut offset = 0;
    let mut push = |band: &[C64], level: usize, filter: usize, bands: &mut Vec<BandEntry>| {
        bands.push(BandEntry { level, filter, count: band.len(), offset });
        for v in band {
            payload.extend_from_slice(&v.re.to_le_bytes());
        }
        offset += band.len();
        if complex {
            for v in band {
                payload.extend_from_slice(&v.im.to_le_bytes());
            }
            offset += band.len();
        }
    };
    for (j, lvl) in pyr.levels.iter().enumerate() {
        for (l, band) in lvl.iter().enumerate() {
            push(band, j + 1, l + 1, &mut bands);
        }
    }
    push(&pyr.lowpass, 0, 0, &mut bands);
    let json = stem.with_extension("json");
    let bin = stem.with_extension("bin");
    let header = BundleHeader {
        format_version: 1,
        width: pyr.width,
        height: pyr.height,
        dilation: pyr.dilation,
        n_filters: pyr.n_filters,
        complex,
        redundancy: pyr.redundancy(),
        levels: pyr.info.clone(),
        bands,
        payload: bin.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
    };
    std::fs::write(&bin, payload)?;
    std::fs::write(&json, serde_json::to_string_pretty(&header).map_err(|e| Error::Parse(e.to_string()))?)?;
    Ok((json, bin))
}

pub fn read_bundle(json: &Path) -> Result<CoeffPyramid> {
    let header: BundleHeader =
        serde_json::from_str(&std::fs::read_to_string(json)?).map_err(|e| Error::Parse(e.to_string()))?;
    let bin = json.with_file_name(&header.payload);
    let bytes = std::fs::read(bin)?;
    let value = |i: usize| -> Result<f64> {
        let b = bytes.get(8 * i..8 * i + 8).ok_or_else(|| Error::Parse("payload too short".into()))?;
        Ok(f64::from_le_bytes(b.try_into().expect("8 bytes")))
    };
    let read_band = |e: &BandEntry| -> Result<Vec<C64>> {
        (0..e.count)
            .map(|i| {
                let re = value(e.offset + i)?;
                let im = if header.complex { value(e.offset + e.count + i)? } else { 0.0 };
                Ok(C64::new(re, im))
            })
            .collect()
    };
    let depth = header.levels.len();
    let mut levels = vec![Vec::new(); depth];
    let mut lowpass = None;
    for e in &header.bands {
        match e.level {
            0 => lowpass = Some(read_band(e)?),
            l if l <= depth => levels[l - 1].push(read_band(e)?),
            l => return Err(Error::Parse(format!("band level {l} beyond depth {depth}"))),
        }
    }
    Ok(CoeffPyramid {
        width: header.width,
        height: header.height,
        dilation: header.dilation,
        n_filters: header.n_filters,
        levels,
        info: header.levels,
        lowpass: lowpass.ok_or_else(|| Error::Parse("bundle has no low-pass band".into()))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::report;
    use crate::construct::thm22_bank;
    use crate::transform::analyze;

    #[test]
    fn bank_round_trip_is_bit_identical() {
        let bank = thm22_bank(3).unwrap();
        let rep = report(&bank).unwrap();
        let s = BankFileV1::from_bank(&bank, Some(&rep)).unwrap().to_json().unwrap();
        let back = BankFileV1::from_json(&s).unwrap().to_bank().unwrap();
        for (a, b) in bank.filters().iter().zip(back.filters()) {
            assert_eq!(a.support_min(), b.support_min());
            assert_eq!(a.shape(), b.shape());
            for (x, y) in a.data().iter().zip(b.data()) {
                assert_eq!(x.re.to_bits(), y.re.to_bits());
                assert_eq!(x.im.to_bits(), y.im.to_bits());
            }
        }
        assert_eq!(back.canonical_pairs, bank.canonical_pairs);
        assert_eq!(back.dilation, bank.dilation);
    }

    #[test]
    fn malformed_bank_files_are_rejected() {
        let bank = thm22_bank(1).unwrap();
        let mut f = BankFileV1::from_bank(&bank, None).unwrap();
        f.filters[1].im.pop();
        assert!(matches!(f.to_bank(), Err(Error::Parse(_))));
        assert!(matches!(BankFileV1::from_json("{\"format_version\": 1}"), Err(Error::Parse(_))));
        let mut f = BankFileV1::from_bank(&bank, None).unwrap();
        f.format_version = 2;
        assert!(f.to_bank().is_err());
    }

    #[test]
    fn pgm_formats() {
        let p2 = b"P2\n# comment\n3 2\n255\n0 1 2\n3 4 255\n";
        let img = read_pgm(p2).unwrap();
        assert_eq!((img.width, img.height), (3, 2));
        assert_eq!(img.at(1, 2).re, 255.0);
        let mut p5 = b"P5 2 2 255\n".to_vec();
        p5.extend_from_slice(&[9, 8, 7, 6]);
        let img = read_pgm(&p5).unwrap();
        assert_eq!(img.at(1, 0).re, 7.0);
        let mut p16 = b"P5 1 1 1000\n".to_vec();
        p16.extend_from_slice(&999u16.to_be_bytes());
        assert_eq!(read_pgm(&p16).unwrap().at(0, 0).re, 999.0);
        assert!(read_pgm(b"P3 1 1 255 0").is_err());
        assert!(read_pgm(b"P5 4 4 255\n\x01").is_err());
        let out = write_pgm(&read_pgm(p2).unwrap(), 255);
        assert_eq!(read_pgm(out.as_bytes()).unwrap(), read_pgm(p2).unwrap());
    }

    #[test]
    fn bundle_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let bank = thm22_bank(2).unwrap();
        let img = ImageGrid::from_real(8, 8, &(0..64).map(|v| v as f64).collect::<Vec<_>>()).unwrap();
        let pyr = analyze(&bank, &img, 2).unwrap();
        let (json, bin) = write_bundle(&pyr, &dir.path().join("coeffs")).unwrap();
        let n: usize = pyr.levels.iter().flatten().map(|b| b.len()).sum::<usize>() + pyr.lowpass.len();
        assert_eq!(std::fs::metadata(&bin).unwrap().len() as usize, 8 * n);
        assert_eq!(read_bundle(&json).unwrap(), pyr);
    }
}

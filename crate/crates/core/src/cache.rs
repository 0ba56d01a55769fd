//! Level files on disk.
//!
//! A word level is a header line `pn v1 n=<n> count=<c>` followed by one
//! word per line. A generator level uses the header `pngen v1 n=<n>
//! count=<c>` and one comma-separated generator per line.

use std::fs;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::chain::Generator;
use crate::enumerate::{GeneratorSet, PnWordSet};
use crate::error::{Error, Result};
use crate::word::BinaryWord;

pub const WORDS_TAG: &str = "pn";
pub const GENERATORS_TAG: &str = "pngen";
pub const FORMAT_VERSION: &str = "v1";

/// Environment variable naming the default cache root.
pub const CACHE_DIR_ENV: &str = "PNCHAIN_CACHE_DIR";

fn header(tag: &str, n: usize, count: usize) -> String {
    format!("{tag} {FORMAT_VERSION} n={n} count={count}")
}

fn parse_header(line: &str, tag: &str, source: &str) -> Result<(usize, usize)> {
    let corrupt = |reason: String| Error::CacheCorrupt {
        path: source.to_string(),
        reason,
    };
    let fields: Vec<&str> = line.split_whitespace().collect();
    match fields.as_slice() {
        [t, v, n, c] if *t == tag && *v == FORMAT_VERSION => {
            let n = n
                .strip_prefix("n=")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| corrupt(format!("bad length field {n:?}")))?;
            let c = c
                .strip_prefix("count=")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| corrupt(format!("bad count field {c:?}")))?;
            Ok((n, c))
        }
        _ => Err(corrupt(format!("unexpected header {line:?}"))),
    }
}

pub fn write_word_set<W: Write>(out: &mut W, set: &PnWordSet) -> io::Result<()> {
    writeln!(out, "{}", header(WORDS_TAG, set.n(), set.len()))?;
    for w in set {
        writeln!(out, "{w}")?;
    }
    Ok(())
}

pub fn write_generator_set<W: Write>(out: &mut W, set: &GeneratorSet) -> io::Result<()> {
    writeln!(out, "{}", header(GENERATORS_TAG, set.n(), set.len()))?;
    for g in set {
        writeln!(out, "{g}")?;
    }
    Ok(())
}

/// Reads a word level; `source` names the input in error messages.
pub fn read_word_set<R: BufRead>(input: R, source: &str) -> Result<PnWordSet> {
    let (n, body) = read_body(input, WORDS_TAG, source)?;
    let words = body
        .iter()
        .map(|line| {
            let w: BinaryWord = line.parse()?;
            if w.len() == n {
                Ok(w)
            } else {
                Err(Error::CacheCorrupt {
                    path: source.into(),
                    reason: format!("word {line:?} does not have length {n}"),
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let set = PnWordSet::new(n, words);
    check_count(set.len(), body.len(), source)?;
    Ok(set)
}

pub fn read_generator_set<R: BufRead>(input: R, source: &str) -> Result<GeneratorSet> {
    let (n, body) = read_body(input, GENERATORS_TAG, source)?;
    let generators = body
        .iter()
        .map(|line| {
            let g: Generator = line.parse()?;
            if g.len() == n {
                Ok(g)
            } else {
                Err(Error::CacheCorrupt {
                    path: source.into(),
                    reason: format!("generator {line:?} does not have length {n}"),
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let set = GeneratorSet::new(n, generators);
    check_count(set.len(), body.len(), source)?;
    Ok(set)
}

fn check_count(unique: usize, lines: usize, source: &str) -> Result<()> {
    if unique == lines {
        Ok(())
    } else {
        Err(Error::CacheCorrupt {
            path: source.into(),
            reason: format!("{} duplicate lines", lines - unique),
        })
    }
}

fn read_body<R: BufRead>(input: R, tag: &str, source: &str) -> Result<(usize, Vec<String>)> {
    let mut lines = input.lines();
    let first = lines.next().transpose()?.ok_or_else(|| Error::CacheCorrupt {
        path: source.into(),
        reason: "empty file".into(),
    })?;
    let (n, count) = parse_header(&first, tag, source)?;
    let body = lines.collect::<io::Result<Vec<String>>>()?;
    if body.len() != count {
        return Err(Error::CacheCorrupt {
            path: source.into(),
            reason: format!("header says {count} entries, found {}", body.len()),
        });
    }
    Ok((n, body))
}

/// One file per level under a root directory.
#[derive(Clone, Debug)]
pub struct LevelCache {
    dir: PathBuf,
}

impl LevelCache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn words_path(&self, n: usize) -> PathBuf {
        self.dir.join(format!("words_n{n:02}.txt"))
    }

    pub fn generators_path(&self, n: usize) -> PathBuf {
        self.dir.join(format!("generators_n{n:02}.txt"))
    }

    pub fn read_words(&self, n: usize) -> Result<Option<PnWordSet>> {
        let path = self.words_path(n);
        let Some(file) = open_if_exists(&path)? else {
            return Ok(None);
        };
        let set = read_word_set(BufReader::new(file), &path.display().to_string())?;
        expect_level(set.n(), n, &path)?;
        Ok(Some(set))
    }

    pub fn read_generators(&self, n: usize) -> Result<Option<GeneratorSet>> {
        let path = self.generators_path(n);
        let Some(file) = open_if_exists(&path)? else {
            return Ok(None);
        };
        let set = read_generator_set(BufReader::new(file), &path.display().to_string())?;
        expect_level(set.n(), n, &path)?;
        Ok(Some(set))
    }

    pub fn write_words(&self, set: &PnWordSet) -> Result<()> {
        write_atomically(&self.words_path(set.n()), |out| write_word_set(out, set))
    }

    pub fn write_generators(&self, set: &GeneratorSet) -> Result<()> {
        write_atomically(&self.generators_path(set.n()), |out| {
            write_generator_set(out, set)
        })
    }
}

fn open_if_exists(path: &Path) -> Result<Option<fs::File>> {
    match fs::File::open(path) {
        Ok(f) => Ok(Some(f)),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn expect_level(found: usize, wanted: usize, path: &Path) -> Result<()> {
    if found == wanted {
        Ok(())
    } else {
        Err(Error::CacheCorrupt {
            path: path.display().to_string(),
            reason: format!("holds level {found}, expected {wanted}"),
        })
    }
}

fn write_atomically(
    path: &Path,
    body: impl FnOnce(&mut BufWriter<fs::File>) -> io::Result<()>,
) -> Result<()> {
    let tmp = path.with_extension("txt.tmp");
    {
        let mut out = BufWriter::new(fs::File::create(&tmp)?);
        body(&mut out)?;
        out.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

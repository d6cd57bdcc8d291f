//! Search ranges: built-in defaults, an optional TOML file, then flag
//! overrides, in that order.
//!
//! The file is flat: one `[section]` per command family, every value an
//! inclusive range written `key = [lo, hi]`.
//!
//! ```toml
//! [curves]
//! k = [-5, 8]
//! m = [1, 30]
//!
//! [sweep]
//! p3 = [1, 1]
//! ```

use std::collections::BTreeMap;

use serde::Serialize;
use ulrich_core::classification::Cor53Bounds;
use ulrich_core::ulrich::SweepConfig;
use ulrich_core::{IntRange, SearchConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

type Section = BTreeMap<String, [i64; 2]>;

/// Effective ranges, keyed by section then by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Config(BTreeMap<String, Section>);

fn section(entries: &[(&str, i64, i64)]) -> Section {
    entries
        .iter()
        .map(|(k, lo, hi)| (k.to_string(), [*lo, *hi]))
        .collect()
}

fn search_section(c: &SearchConfig, keys: &[(&str, &str)]) -> Section {
    let named: BTreeMap<_, _> = c.named().into_iter().collect();
    keys.iter()
        .map(|(key, field)| (key.to_string(), [named[field].lo, named[field].hi]))
        .collect()
}

const CURVE_KEYS: [(&str, &str); 5] = [("k", "k"), ("a", "a"), ("n", "n"), ("m", "m"), ("g", "g")];
const SURFACE_KEYS: [(&str, &str); 4] = [("k", "k"), ("a", "a"), ("n", "n"), ("l2", "l2")];
const P1XP1_KEYS: [(&str, &str); 3] = [("k", "k"), ("a", "b1"), ("b", "b2")];

impl Default for Config {
    fn default() -> Self {
        let sweep = SweepConfig::default();
        let mut sweep_section = section(&[
            ("k", sweep.k.lo, sweep.k.hi),
            ("a", sweep.a.lo, sweep.a.hi),
            ("law_k", sweep.law_k.lo, sweep.law_k.hi),
            ("p1", sweep.p1_degrees.lo, sweep.p1_degrees.hi),
            ("quadric", sweep.quadric_components.lo, sweep.quadric_components.hi),
        ]);
        for (n, r) in &sweep.proj_spaces {
            sweep_section.insert(format!("p{n}"), [r.lo, r.hi]);
        }
        let cor = Cor53Bounds::default();
        let mut sections = BTreeMap::new();
        sections.insert("curves".into(), search_section(&SearchConfig::curves(), &CURVE_KEYS));
        sections.insert("surfaces".into(), search_section(&SearchConfig::surfaces(), &SURFACE_KEYS));
        sections.insert("p1xp1".into(), search_section(&SearchConfig::p1xp1(), &P1XP1_KEYS));
        sections.insert("sweep".into(), sweep_section);
        sections.insert(
            "cor53".into(),
            section(&[
                ("lh", cor.lh.lo, cor.lh.hi),
                ("h2", cor.h2.lo, cor.h2.hi),
                ("hk", cor.hk.lo, cor.hk.hi),
                ("n", cor.n.lo, cor.n.hi),
                ("k", cor.k.lo, cor.k.hi),
            ]),
        );
        sections.insert("obstruction".into(), section(&[("components", 1, 6), ("k", -6, 6)]));
        Config(sections)
    }
}

fn is_proj_key(key: &str) -> bool {
    key.strip_prefix('p')
        .and_then(|n| n.parse::<u32>().ok())
        .is_some_and(|n| n >= 2)
}

impl Config {
    fn set(&mut self, section: &str, key: &str, lo: i64, hi: i64) -> Result<(), ConfigError> {
        let sec = self
            .0
            .get_mut(section)
            .ok_or_else(|| ConfigError(format!("unknown config section [{section}]")))?;
        if !sec.contains_key(key) && !(section == "sweep" && is_proj_key(key)) {
            return Err(ConfigError(format!("unknown key `{key}` in [{section}]")));
        }
        sec.insert(key.to_string(), [lo, hi]);
        Ok(())
    }

    /// Applies a TOML document on top of the current values.
    pub fn merge_toml(&mut self, text: &str) -> Result<(), ConfigError> {
        let table: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| ConfigError(format!("config parse error: {}", e.message())))?;
        for (name, value) in table {
            let toml::Value::Table(entries) = value else {
                return Err(ConfigError(format!("`{name}` must be a [section]")));
            };
            for (key, v) in entries {
                let pair = v
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .and_then(|a| Some([a[0].as_integer()?, a[1].as_integer()?]))
                    .ok_or_else(|| ConfigError(format!("[{name}] {key} must be [lo, hi]")))?;
                self.set(&name, &key, pair[0], pair[1])?;
            }
        }
        Ok(())
    }

    /// Applies `[section.]key=lo:hi`. Without a section the key is set in
    /// every section that has it.
    pub fn apply_override(&mut self, spec: &str) -> Result<(), ConfigError> {
        let bad = || ConfigError(format!("bad range override `{spec}`; expected [section.]key=lo:hi"));
        let (path, range) = spec.split_once('=').ok_or_else(bad)?;
        let (lo, hi) = range.split_once(':').ok_or_else(bad)?;
        let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
        match path.split_once('.') {
            Some((section, key)) => self.set(section.trim(), key.trim(), lo, hi),
            None => {
                let key = path.trim();
                let targets: Vec<String> = self
                    .0
                    .iter()
                    .filter(|(_, sec)| sec.contains_key(key))
                    .map(|(name, _)| name.clone())
                    .collect();
                if targets.is_empty() {
                    return Err(ConfigError(format!("no section has a key `{key}`")));
                }
                for t in targets {
                    self.set(&t, key, lo, hi)?;
                }
                Ok(())
            }
        }
    }

    fn range(&self, section: &str, key: &str) -> IntRange {
        let [lo, hi] = self.0[section][key];
        IntRange::new(lo, hi)
    }

    fn search(&self, section: &str, keys: &[(&str, &str)], base: SearchConfig) -> Result<SearchConfig, ConfigError> {
        let mut out = base;
        for (name, r) in out.named_mut() {
            if let Some((key, _)) = keys.iter().find(|(_, field)| *field == name) {
                *r = self.range(section, key);
            }
        }
        out.validate().map_err(|e| ConfigError(e.to_string()))?;
        Ok(out)
    }

    pub fn curves(&self) -> Result<SearchConfig, ConfigError> {
        self.search("curves", &CURVE_KEYS, SearchConfig::curves())
    }

    pub fn surfaces(&self) -> Result<SearchConfig, ConfigError> {
        self.search("surfaces", &SURFACE_KEYS, SearchConfig::surfaces())
    }

    pub fn p1xp1(&self) -> Result<SearchConfig, ConfigError> {
        self.search("p1xp1", &P1XP1_KEYS, SearchConfig::p1xp1())
    }

    pub fn sweep(&self) -> Result<SweepConfig, ConfigError> {
        let sec = &self.0["sweep"];
        let proj_spaces = sec
            .iter()
            .filter(|(k, _)| is_proj_key(k))
            .filter(|(_, [lo, hi])| lo <= hi)
            .map(|(k, [lo, hi])| (k[1..].parse::<u32>().expect("checked"), IntRange::new(*lo, *hi)))
            .collect::<BTreeMap<_, _>>()
            .into_iter()
            .collect();
        let cfg = SweepConfig {
            p1_degrees: self.range("sweep", "p1"),
            proj_spaces,
            quadric_components: self.range("sweep", "quadric"),
            k: self.range("sweep", "k"),
            a: self.range("sweep", "a"),
            law_k: self.range("sweep", "law_k"),
        };
        cfg.validate().map_err(|e| ConfigError(e.to_string()))?;
        Ok(cfg)
    }

    pub fn cor53(&self) -> Cor53Bounds {
        Cor53Bounds {
            lh: self.range("cor53", "lh"),
            h2: self.range("cor53", "h2"),
            hk: self.range("cor53", "hk"),
            n: self.range("cor53", "n"),
            k: self.range("cor53", "k"),
        }
    }

    pub fn obstruction(&self) -> (IntRange, IntRange) {
        (self.range("obstruction", "components"), self.range("obstruction", "k"))
    }

    /// Widens the solver sections (curves, surfaces, p1xp1) by `factor`.
    pub fn widen(&mut self, factor: i64) -> Result<(), ConfigError> {
        if factor < 1 {
            return Err(ConfigError(format!("widening factor must be >= 1, got {factor}")));
        }
        let updates = [
            ("curves", &CURVE_KEYS[..], self.curves()?.widened(factor)),
            ("surfaces", &SURFACE_KEYS[..], self.surfaces()?.widened(factor)),
            ("p1xp1", &P1XP1_KEYS[..], self.p1xp1()?.widened(factor)),
        ];
        for (section, keys, widened) in updates {
            let named: BTreeMap<_, _> = widened.named().into_iter().collect();
            for (key, field) in keys {
                let r = named[field];
                self.set(section, key, r.lo, r.hi)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip_through_core_types() {
        let c = Config::default();
        assert_eq!(c.curves().unwrap(), SearchConfig::curves());
        assert_eq!(c.surfaces().unwrap().l2, SearchConfig::surfaces().l2);
        assert_eq!(c.p1xp1().unwrap().b1, IntRange::new(1, 50));
        assert_eq!(c.sweep().unwrap(), SweepConfig::default());
        assert_eq!(c.cor53(), Cor53Bounds::default());
    }

    #[test]
    fn file_then_flags() {
        let mut c = Config::default();
        c.merge_toml("[curves]\nk = [-2, 3]\n\n[sweep]\np3 = [1, 0]\np4 = [1, 1]\n").unwrap();
        assert_eq!(c.curves().unwrap().k, IntRange::new(-2, 3));
        let s = c.sweep().unwrap();
        assert_eq!(s.proj_spaces, vec![(2, IntRange::new(1, 3)), (4, IntRange::new(1, 1))]);
        c.apply_override("curves.k=0:1").unwrap();
        assert_eq!(c.curves().unwrap().k, IntRange::new(0, 1));
        // unprefixed keys hit every section that has them
        c.apply_override("a=1:4").unwrap();
        assert_eq!(c.surfaces().unwrap().a, IntRange::new(1, 4));
        assert_eq!(c.sweep().unwrap().a, IntRange::new(1, 4));
    }

    #[test]
    fn rejects_bad_input() {
        let mut c = Config::default();
        assert!(c.merge_toml("[curves]\nq = [1, 2]").is_err());
        assert!(c.merge_toml("[nowhere]\nk = [1, 2]").is_err());
        assert!(c.merge_toml("[curves]\nk = 3").is_err());
        assert!(c.merge_toml("[curves\n").is_err());
        assert!(c.apply_override("k=1").is_err());
        assert!(c.apply_override("zz=1:2").is_err());
        c.apply_override("curves.m=1:100000000").unwrap();
        assert!(c.curves().is_err());
    }

    #[test]
    fn widening_touches_solver_sections_only() {
        let mut c = Config::default();
        c.widen(2).unwrap();
        let (got, want) = (c.curves().unwrap(), SearchConfig::curves().widened(2));
        assert_eq!((got.k, got.a, got.n, got.m, got.g), (want.k, want.a, want.n, want.m, want.g));
        assert_eq!(c.sweep().unwrap(), SweepConfig::default());
    }
}

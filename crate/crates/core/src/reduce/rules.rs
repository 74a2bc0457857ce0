use std::fmt;
use std::str::FromStr;

use serde::Serialize;

/// The nine reduction rules, in leftmost-outermost priority order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RuleName {
    /// `(\x. t) u -> t{x := u}`
    AppLam,
    /// `! u -> !`
    AppDai,
    /// `\x. t x -> t` when `x` is not free in `t`
    LamApp,
    /// `\x. ! -> !`
    LamDai,
    /// `{|θ|}. c -> θ(c)` when `c` is in the domain of `θ`
    CaseCons,
    /// `{|θ|}. ! -> !`
    CaseDai,
    /// `{|θ|}. (t u) -> ({|θ|}. t) u`
    CaseApp,
    /// `{|θ|}. \x. t -> \x. {|θ|}. t`
    CaseLam,
    /// `{|θ|}. {|φ|}. t -> {|θ∘φ|}. t`
    CaseCase,
}

impl RuleName {
    pub const ALL: [RuleName; 9] = [
        RuleName::AppLam,
        RuleName::AppDai,
        RuleName::LamApp,
        RuleName::LamDai,
        RuleName::CaseCons,
        RuleName::CaseDai,
        RuleName::CaseApp,
        RuleName::CaseLam,
        RuleName::CaseCase,
    ];

    pub fn short(self) -> &'static str {
        match self {
            RuleName::AppLam => "AL",
            RuleName::AppDai => "AD",
            RuleName::LamApp => "LA",
            RuleName::LamDai => "LD",
            RuleName::CaseCons => "CO",
            RuleName::CaseDai => "CD",
            RuleName::CaseApp => "CA",
            RuleName::CaseLam => "CL",
            RuleName::CaseCase => "CC",
        }
    }

    fn bit(self) -> u16 {
        1 << (self as u16)
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short())
    }
}

/// A subset of the nine rules.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleSet(u16);

impl RuleSet {
    /// All nine rules.
    pub const FULL: RuleSet = RuleSet(0x1ff);
    /// Everything except case composition.
    pub const LC_MINUS: RuleSet = RuleSet(0x1ff & !(1 << RuleName::CaseCase as u16));
    /// Case commutation only: CaseApp and CaseLam.
    pub const LCOM: RuleSet =
        RuleSet((1 << RuleName::CaseApp as u16) | (1 << RuleName::CaseLam as u16));
    /// The non-commutation rules of `LC_MINUS`.
    pub const LB: RuleSet = RuleSet(0x3f);

    pub fn empty() -> RuleSet {
        RuleSet(0)
    }

    pub fn from_rules(rules: impl IntoIterator<Item = RuleName>) -> RuleSet {
        rules.into_iter().fold(RuleSet(0), |s, r| s.with(r))
    }

    pub fn with(self, r: RuleName) -> RuleSet {
        RuleSet(self.0 | r.bit())
    }

    pub fn contains(self, r: RuleName) -> bool {
        self.0 & r.bit() != 0
    }

    pub fn rules(self) -> impl Iterator<Item = RuleName> {
        RuleName::ALL.into_iter().filter(move |r| self.contains(*r))
    }

    pub fn preset_name(self) -> Option<&'static str> {
        match self {
            RuleSet::FULL => Some("full"),
            RuleSet::LC_MINUS => Some("lcminus"),
            RuleSet::LCOM => Some("lcom"),
            RuleSet::LB => Some("lb"),
            _ => None,
        }
    }
}

impl fmt::Debug for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.rules()).finish()
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = self.preset_name() {
            return f.write_str(name);
        }
        let names: Vec<&str> = self.rules().map(RuleName::short).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown rule set `{0}` (expected full, lcminus, lcom, lb or a comma list of rule tags)")]
pub struct UnknownRuleSet(pub String);

impl FromStr for RuleSet {
    type Err = UnknownRuleSet;

    /// Accepts a preset name or a comma-separated list of short rule tags.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => return Ok(RuleSet::FULL),
            "lcminus" => return Ok(RuleSet::LC_MINUS),
            "lcom" => return Ok(RuleSet::LCOM),
            "lb" => return Ok(RuleSet::LB),
            _ => {}
        }
        let mut set = RuleSet::empty();
        for tag in s.split(',').map(str::trim) {
            let rule = RuleName::ALL
                .into_iter()
                .find(|r| r.short().eq_ignore_ascii_case(tag))
                .ok_or_else(|| UnknownRuleSet(s.to_string()))?;
            set = set.with(rule);
        }
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets() {
        assert_eq!(RuleSet::FULL.rules().count(), 9);
        assert!(!RuleSet::LC_MINUS.contains(RuleName::CaseCase));
        assert_eq!(RuleSet::LC_MINUS.rules().count(), 8);
        assert_eq!(
            RuleSet::LCOM.rules().collect::<Vec<_>>(),
            vec![RuleName::CaseApp, RuleName::CaseLam]
        );
        let lb: Vec<_> = RuleSet::LB.rules().map(RuleName::short).collect();
        assert_eq!(lb, ["AL", "AD", "LA", "LD", "CO", "CD"]);
    }

    #[test]
    fn lcminus_splits_into_lcom_and_lb() {
        for r in RuleName::ALL {
            assert_eq!(
                RuleSet::LC_MINUS.contains(r),
                RuleSet::LCOM.contains(r) || RuleSet::LB.contains(r)
            );
            assert!(!(RuleSet::LCOM.contains(r) && RuleSet::LB.contains(r)));
        }
    }

    #[test]
    fn parse_presets_and_lists() {
        assert_eq!("lcom".parse::<RuleSet>().unwrap(), RuleSet::LCOM);
        assert_eq!("CA,CL".parse::<RuleSet>().unwrap(), RuleSet::LCOM);
        assert!("nope".parse::<RuleSet>().is_err());
    }
}

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::corpus::CorpusMode;
use crate::error::HarnessError;

/// Environment variable overriding every default corpus bound.
pub const MAX_ORDER_ENV: &str = "RICKART_LAB_MAX_ORDER";

/// How a theorem quantifies over objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Schema {
    Suite(CorpusMode),
    /// A fixed list of facts about named objects.
    Golden,
    /// A report-only probe of finite modules over a ring.
    Probe,
}

macro_rules! theorems {
    ($($v:ident => $name:literal, $schema:expr, $bound:expr, $statement:literal;)*) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        #[allow(non_camel_case_types)]
        pub enum TheoremId { $($v,)* }

        impl TheoremId {
            pub const ALL: &'static [TheoremId] = &[$(TheoremId::$v,)*];

            pub fn name(self) -> &'static str {
                match self { $(TheoremId::$v => $name,)* }
            }

            pub fn schema(self) -> Schema {
                match self { $(TheoremId::$v => $schema,)* }
            }

            /// Built-in default bound (before the environment override).
            pub fn builtin_bound(self) -> u64 {
                match self { $(TheoremId::$v => $bound,)* }
            }

            pub fn statement(self) -> &'static str {
                match self { $(TheoremId::$v => $statement,)* }
            }
        }
    };
}

use CorpusMode::*;
use Schema::{Golden, Probe, Suite};

theorems! {
    ST0 => "ST0", Suite(Pair), 1024,
        "if every summand of M embeds in N: N strongly M-CS-Rickart iff N M-CS-Rickart and M weak duo; dually with quotients and N weak duo";
    ST00 => "ST00", Suite(Single), 64,
        "strongly self-CS-Rickart iff self-CS-Rickart and weak duo; dually";
    ST01 => "ST01", Suite(Single), 64,
        "indecomposable: strongly self-CS-Rickart iff self-CS-Rickart; dually";
    ST1 => "ST1", Suite(Single), 64,
        "strongly self-CS-Rickart iff self-CS-Rickart with abelian endomorphism ring; dually";
    T_NONSING => "T_NONSING", Suite(Pair), 1024,
        "strongly M-CS-Rickart and M-K-nonsingular iff strongly M-Rickart; dually with T-nonsingular";
    REG_COR => "REG_COR", Suite(Pair), 1024,
        "under (strongly) M-CS-Rickart: (strongly) M-regular iff M-K-nonsingular and M direct N-injective; dually with T-nonsingular and direct projectivity";
    T_SDR1 => "T_SDR1", Suite(Pair), 1024,
        "strongly M-CS-Rickart passes to summands M' of M and subobjects N' of N; dually to quotients M' of M and summands N' of N";
    C_SDR5 => "C_SDR5", Suite(Pair), 1024,
        "(dual) strongly M-CS-Rickart passes to summands M' of M and N' of N";
    L_SIPSSP => "L_SIPSSP", Suite(Single), 64,
        "strictly SIP-extending iff any two summands meet essentially in a fully invariant summand; strictly SSP-lifting iff any two summands sum above one";
    P_SDR3 => "P_SDR3", Suite(Pair), 1024,
        "summands of M embed in N and N strongly M-CS-Rickart imply M strictly SIP-extending; dually N strictly SSP-lifting";
    C_SDR4 => "C_SDR4", Suite(Single), 64,
        "strongly self-CS-Rickart implies strictly SIP-extending; dual strongly implies strictly SSP-lifting";
    L_AB => "L_AB", Suite(Decomposition), 64,
        "A + B strictly SIP-extending implies B strongly A-CS-Rickart; strictly SSP-lifting implies B dual strongly A-CS-Rickart";
    E_SIP => "E_SIP", Golden, 0,
        "summands, fully invariant summands and SIP/SSP behaviour of Z2 + Z16";
    T_SDR2 => "T_SDR2", Suite(Triple), 1024,
        "N1, N2 strongly M-CS-Rickart imply N1 + N2 strongly M-CS-Rickart; dually for M1 + M2";
    T_PR1 => "T_PR1", Suite(Triple), 1024,
        "N1 + N2 strongly M-CS-Rickart iff both are; N dual strongly M1 + M2-CS-Rickart iff for both";
    C_PR2 => "C_PR2", Suite(Split), 1024,
        "a direct sum of finitely many N_i is strongly M-CS-Rickart iff every N_i is; dually";
    P_PR3 => "P_PR3", Suite(Decomposition), 64,
        "sum strongly self-CS-Rickart implies M_i strongly M_j-CS-Rickart for all i, j; sum dual self-CS-Rickart implies M_i dual M_j-CS-Rickart";
    T_SSIP => "T_SSIP", Suite(Split), 1024,
        "M strictly SSIP-extending: sum of N_i strongly M-CS-Rickart iff every N_i is; N strictly SSSP-lifting: dual statement";
    EC1 => "EC1", Golden, 0,
        "sums of (dual) strongly self-CS-Rickart objects need not be: Z2 + Z2 and the upper triangular ring over F2";
    T_PSTR4 => "T_PSTR4", Suite(Decomposition), 64,
        "sum of M_i (dual) strongly self-CS-Rickart iff every M_i is and Hom(M_i, M_j) = 0 for i != j";
    C1_ABGR => "C1_ABGR", Suite(Single), 64,
        "closed-form classification agrees with computed strongly / dual strongly self-CS-Rickart and weak duo; torsion clause iff cyclic";
    E1_ABGR => "E1_ABGR", Golden, 0,
        "Zp + Zp is (dual) self-CS-Rickart but not (dual) strongly self-CS-Rickart";
    EX1 => "EX1", Golden, 0,
        "Z4, coprime cyclic pairs and the closed-form rows for Z, Q and Z + Zp";
    SKEW_EXAMPLE => "SKEW_EXAMPLE", Golden, 0,
        "the skew group ring module: endomorphisms, kernels and strong self-CS-Rickartness";
    SEMISIMPLE_PROBE => "SEMISIMPLE_PROBE", Probe, 16,
        "square-free semisimple rings against conditions on all their modules, over F2";
}

impl TheoremId {
    /// The corpus mode of a suite theorem.
    pub fn corpus_mode(self) -> Option<CorpusMode> {
        match self.schema() {
            Schema::Suite(m) => Some(m),
            _ => None,
        }
    }

    /// Default bound, honouring the environment override.
    pub fn default_bound(self) -> u64 {
        env_bound().unwrap_or_else(|| self.builtin_bound())
    }

    /// Restriction of the theorem to what finite objects can express.
    pub fn scope_note(self) -> Option<&'static str> {
        match self {
            TheoremId::C_PR2 => Some("finite index sets; finite generation and cogeneration hold for every finite group"),
            TheoremId::P_PR3 | TheoremId::T_PSTR4 | TheoremId::T_SSIP => Some("finite index sets only"),
            TheoremId::T_PR1 | TheoremId::T_SDR2 => Some("two summands"),
            TheoremId::EX1 => Some("rows with an infinite object other than the closed-form classification are omitted"),
            TheoremId::E1_ABGR => Some("Zp + Q is mixed and outside every closed-form clause"),
            TheoremId::SEMISIMPLE_PROBE => Some("injectivity and projectivity measured inside the enumerated modules"),
            _ => None,
        }
    }
}

/// The value of the bound override, if set and valid.
pub fn env_bound() -> Option<u64> {
    std::env::var(MAX_ORDER_ENV).ok()?.trim().parse().ok().filter(|&n| n >= 1)
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let up = s.trim().to_ascii_uppercase().replace('-', "_");
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| t.name() == up)
            .ok_or_else(|| HarnessError::Usage(format!("unknown theorem id {s:?}")))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

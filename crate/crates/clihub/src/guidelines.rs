//! Annotation guidelines served to annotators.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Guideline {
    pub id: &'static str,
    pub rule: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Guidelines {
    pub language: &'static [Guideline],
    pub sentiment: &'static [Guideline],
}

pub const LANGUAGE: &[Guideline] = &[
    Guideline {
        id: "LG1",
        rule: "Tag a romanized Bengali word bn and an English word en, judging by the word as written in this message.",
    },
    Guideline {
        id: "LG2",
        rule: "Punctuation, numbers, emoticons, emoji, URLs, mentions and hashtags are un.",
    },
    Guideline {
        id: "LG3",
        rule: "A word spelled the same in both languages takes the language of its meaning here.",
    },
    Guideline {
        id: "LG4",
        rule: "Chat acronyms and shortened English spellings (gr8, luv, hpy) are en.",
    },
    Guideline {
        id: "LG5",
        rule: "An English stem with a Bengali inflection is bn; an English stem with an English suffix is en.",
    },
    Guideline {
        id: "LG6",
        rule: "Names of people and places are un unless they are ordinary words of one language.",
    },
];

pub const SENTIMENT: &[Guideline] = &[
    Guideline {
        id: "SG1",
        rule: "Label the attitude the writer expresses: 1 positive, -1 negative, 0 neutral.",
    },
    Guideline {
        id: "SG2",
        rule: "A self-tagged feeling (\"- feeling sad\") decides the label when present.",
    },
    Guideline {
        id: "SG3",
        rule: "A negated opinion counts as its opposite: \"bhalo na\" is negative.",
    },
    Guideline {
        id: "SG4",
        rule: "Questions, news and plain facts without an attitude are neutral.",
    },
    Guideline {
        id: "SG5",
        rule: "With mixed opinions, label the one the message ends on; if none dominates, use 0.",
    },
];

pub fn guidelines() -> Guidelines {
    Guidelines {
        language: LANGUAGE,
        sentiment: SENTIMENT,
    }
}

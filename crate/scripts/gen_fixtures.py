#!/usr/bin/env python3
"""Regenerates the files under data/. Output is deterministic for a given seed."""

import json
import random
from pathlib import Path

SEED = 7
ROOT = Path(__file__).resolve().parent.parent / "data"

BN_WORDS = """
ami tumi apni amra tomra ora se o ei oi ki keno kothay kokhon kivabe kemon khub bhalo kharap
baje ghor din aaj kal toh to bar ar ebong kintu tai jodi holeo onek onekdin por e fire eshe
nijeke besh bikheto lagche laglo lagbe achhe achi ache chilo hobe hoyeche hoy korchi korbo
korlam kore jabo jacchi gelam gelo dekha dekhlam dekho boshe jaye bolechi bolo shotti ekdom
abar shesh shuru shundor darun moja kosto dukkho rag khushi mon bondhu bari khabar ranna gaan
shob kichu ekta dui tin kotha pore ekhon takhon amar tomar tar oder amader shathe theke diye
jonno moto mone hocche parbo pari parlam chai chaichi deri tarataari thik bhul shohor gram
rasta brishti rod shokal bikel raat ghum pora lekha boi khela jeta hara jitlo harlo dada didi
bhai bon maa baba chele meye lok manush rannaghor dokan bazar taka poisa kaj chuti beranor
""".split()

EN_WORDS = """
i am you we they he she it is are was were be been the a an this that these those with from
for of in on at by very so really just too much many more most good bad happy sad great awful
best worst love hate like nice terrible boring awesome excellent fun angry movie match day
night week today tomorrow yesterday team game song news update office bus train class exam
meeting hall house home school college spotlight time people friend party dinner lunch food
weather rain traffic work job money phone call message photo video show series episode season
player goal win lose score ticket cinema actor music concert city road morning evening all
things thing what why how when where who not never always sometimes again still only also
to bar sleep sleeping play playing watch watching go going come coming see seeing
""".split()

SUFFIXES = ["ing", "ed", "s", "ly", "er"]

ACRONYMS = [
    ("omg", "oh my god", 0),
    ("lol", "laughing out loud", 1),
    ("hpy", "happy", 1),
    ("gr8", "great", 1),
    ("luv", "love", 1),
    ("bff", "best friend forever", 1),
    ("wtf", "what the fudge", -1),
    ("smh", "shaking my head", -1),
    ("fml", "forget my life", -1),
    ("idk", "i do not know", 0),
    ("tbh", "to be honest", 0),
    ("btw", "by the way", 0),
]

NEGATIONS_BN = ["na", "nai", "noy", "ni", "nei"]
NEGATIONS_EN = ["not", "no", "never", "dont", "cant", "don't", "can't"]

POSU = """bhalo darun shundor moja khushi happy good great love best blessed awesome nice
excellent fun""".split()
NEGU = """kharap baje kosto dukkho rag sad bad awful hate worst terrible boring angry""".split()

PHRASES = [
    (-1, "boshe dekha jaye na"),
    (-1, "onekei couldn't sleep"),
    (1, "mon bhore gelo"),
    (1, "khub moja holo"),
    (-1, "mathay uthe gelo"),
    (-1, "time waste holo"),
    (1, "dil khush hoye gelo"),
]

SWN = [
    ("good", 0.75, 0.0, 0.25),
    ("bad", 0.0, 0.625, 0.375),
    ("happy", 0.875, 0.0, 0.125),
    ("sad", 0.0, 0.75, 0.25),
    ("great", 0.75, 0.0, 0.25),
    ("awful", 0.0, 0.875, 0.125),
    ("love", 0.625, 0.0, 0.375),
    ("hate", 0.0, 0.75, 0.25),
    ("boring", 0.0, 0.5, 0.5),
    ("nice", 0.625, 0.0, 0.375),
    ("movie", 0.0, 0.0, 1.0),
]

SOCAL = [("good", 3), ("bad", -3), ("great", 4), ("awful", -4), ("love", 3), ("hate", -4),
         ("happy", 3), ("sad", -3), ("boring", -2), ("nice", 2), ("best", 5), ("worst", -5)]
INTENSIFIERS = [("very", 1), ("really", 1), ("so", 1), ("extremely", 2), ("barely", -1),
                ("hardly", -1), ("khub", 1), ("besh", 1)]

NRC = [("happy", 1, 0), ("love", 1, 0), ("fun", 1, 0), ("sad", 0, 1), ("hate", 0, 1),
       ("angry", 0, 1), ("party", 1, 0), ("rain", 0, 0), ("money", 1, 1), ("jeta", 1, 0)]

EMOTICONS = [("🙂", 1), ("😀", 1), ("😍", 1), ("😂", 1), ("❤", 1), (":)", 1), (":-)", 1),
             (":D", 1), ("<3", 1), ("😠", -1), ("😢", -1), ("😡", -1), ("😞", -1), (":(", -1),
             (":-(", -1), (":'(", -1)]

SEEDS = """ami khub bhalo kharap ki keno toh ar ekta kichu onek amar tomar hobe chilo achhe
korchi jabo dekha kotha din aaj kal baje mon shob abar ekdom shotti bondhu""".split()

# sentiment generator vocabulary
POS_EXTRA = ["posachhe", "jhakkas", "fatafati", "dhamaka", "sera"]
NEG_EXTRA = ["bekar", "faltu", "birokto", "jhamela", "ghatiya"]
FILLER = """ami tumi aaj kal office bus e ache jacchi korchi dekha hobe ki keno ekhon pore
bari khabar ranna class exam train the today going meeting match movie song tomorrow news
update ar with this that amar tomar shathe rasta brishti shokal raat dada bhai""".split()
INTENS = ["khub", "very", "so", "besh", "really"]
POS_TAGS = ["#bhalo_din", "#BestDay", "#happy", "#love_it"]
NEG_TAGS = ["#baje_din", "#WorstDay", "#sad", "#hate_it"]


def write_lines(path, lines):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def write_lexicons(rng):
    lex = ROOT / "lexicons"
    write_lines(lex / "bn_words.txt", sorted(set(BN_WORDS)))
    write_lines(lex / "en_words.txt", sorted(set(EN_WORDS)))
    write_lines(lex / "suffixes_en.txt", SUFFIXES)
    write_lines(lex / "acronyms.txt", [f"{a}\t{e}\t{p}" for a, e, p in ACRONYMS])
    write_lines(lex / "negations_bn.txt", NEGATIONS_BN)
    write_lines(lex / "negations_en.txt", NEGATIONS_EN)
    write_lines(lex / "posu.txt", POSU)
    write_lines(lex / "negu.txt", NEGU)
    write_lines(lex / "phrases.tsv", [f"{p}\t{t}" for p, t in PHRASES])
    write_lines(lex / "swn.tsv", [f"{w}\t{a}\t{b}\t{c}" for w, a, b, c in SWN])
    write_lines(lex / "socal.tsv", [f"{w}\t{s}" for w, s in SOCAL])
    write_lines(lex / "socal_intensifiers.tsv", [f"{w}\t{s}" for w, s in INTENSIFIERS])
    write_lines(lex / "nrc.tsv", [f"{w}\t{p}\t{n}" for w, p, n in NRC])
    write_lines(lex / "emoticons.tsv", [f"{e}\t{p}" for e, p in EMOTICONS])
    freqs = sorted((rng.randint(5, 400) for _ in SEEDS), reverse=True)
    write_lines(lex / "seeds.tsv", [f"{w}\t{f}" for w, f in zip(SEEDS, freqs)])


def sentence(rng, label):
    n = rng.randint(3, 7)
    words = [rng.choice(FILLER) for _ in range(n)]
    if label != 0:
        same = POSU + POS_EXTRA if label > 0 else NEGU + NEG_EXTRA
        other = NEGU + NEG_EXTRA if label > 0 else POSU + POS_EXTRA
        for _ in range(rng.randint(1, 2)):
            at = rng.randint(0, len(words))
            if rng.random() < 0.2:
                # negated opposite word, e.g. "bhalo na" for a negative doc
                neg = rng.choice(["na", "not"]) if label < 0 else rng.choice(["na", "noy"])
                words[at:at] = [rng.choice(other), neg]
            else:
                piece = [rng.choice(same)]
                if rng.random() < 0.3:
                    piece.insert(0, rng.choice(INTENS))
                words[at:at] = piece
    text = " ".join(words)
    r = rng.random()
    if label != 0 and r < 0.08:
        emo = [e for e, p in EMOTICONS if p == label]
        text += " " + rng.choice(emo)
    elif label != 0 and r < 0.12:
        text += " " + rng.choice(POS_TAGS if label > 0 else NEG_TAGS)
    elif label != 0 and r < 0.15:
        text += " - feeling " + rng.choice(["happy", "blessed", "great"] if label > 0 else ["sad", "angry", "bad"])
    if rng.random() < 0.5:
        text += rng.choice([".", "!", " !!", "?", " ..."])
    return text[0].upper() + text[1:]


def labelled(rng, per_class, noise, start_id):
    docs = []
    for label in (-1, 0, 1):
        for _ in range(per_class):
            shown = label
            if rng.random() < noise:
                shown = rng.choice([x for x in (-1, 0, 1) if x != label])
            docs.append({"text": sentence(rng, label), "sentiment": shown})
    rng.shuffle(docs)
    return [{"id": start_id + i, **d} for i, d in enumerate(docs)]


def write_json(path, value):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(value, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")


def write_sentiment(rng):
    write_json(ROOT / "sentiment" / "train.json", labelled(rng, 100, 0.05, 1))
    write_json(ROOT / "sentiment" / "mini_gold.json", labelled(rng, 50, 0.05, 1001))


def write_lang_gold(rng):
    bn = set(BN_WORDS)
    en = set(EN_WORDS)
    bn_only = sorted(bn - en)
    en_only = sorted(en - bn)
    rows = [(w, "bn") for w in rng.sample(bn_only, 90)]
    rows += [(w, "en") for w in rng.sample(en_only, 90)]
    rows += [(w, "un") for w in ["1", "2", "2019", "@", "#", ",", ".", "!", "?", ":)", "😀", "@rahul",
                                  "#bhalo_din", "https://t.co/x", "www.example.com", "3.5", "...", "<3",
                                  "😢", "100"]]
    rng.shuffle(rows)
    write_lines(ROOT / "lang" / "gold_words.tsv", [f"{w}\t{t}" for w, t in rows])


def write_sgdc_eval():
    # rows: true class pos, neg, neu; columns: predicted in the same order
    matrix = [[161, 12, 27], [17, 145, 38], [13, 21, 166]]
    order = [1, -1, 0]
    gold, pred = [], []
    i = 1
    for r, row in enumerate(matrix):
        for c, count in enumerate(row):
            for _ in range(count):
                gold.append({"id": i, "sentiment": order[r]})
                pred.append({"id": i, "sentiment": order[c]})
                i += 1
    write_json(ROOT / "eval" / "sgdc_gold.json", gold)
    write_json(ROOT / "eval" / "sgdc_pred.json", pred)


def write_stream(rng):
    lines = []
    texts = [
        "ami khub bhalo achi aaj",
        "Ami khub   bhalo achi aaj",
        "kal ki hobe keno jani na",
        "bhalo day",
        "ki din gelo - feeling blessed",
        "the match was really good today",
        "ami office jacchi ekhon bus e",
        "আমি খুব ভালো আছি",
        "ekta kichu bolo amar shathe",
        "toh ar kichu na",
    ]
    for i in range(60):
        if i % 17 == 16:
            lines.append("{not valid json")
            continue
        text = rng.choice(texts)
        if rng.random() < 0.5:
            text = text + " " + " ".join(rng.choice(FILLER) for _ in range(rng.randint(0, 4)))
        lines.append(json.dumps({"id": i + 1, "text": text}, ensure_ascii=False))
    write_lines(ROOT / "stream" / "raw.jsonl", lines)


SAMPLE_83 = {
    "id": 83,
    "lang_tagged_text": "Onekdin\\bn por\\bn spotlight\\en e\\bn fire\\bn eshe\\bn nijeke\\bn besh\\bn "
                        "bikheto\\bn bikheto\\bn lagche\\bn ,\\un I\\en am\\en toh\\bn very\\en hpy\\en .\\un",
    "sentiment": 1,
    "text": "Onekdin por spotlight e fire eshe nijeke besh bikheto bikheto lagche, I am toh very happy.",
}


def write_release():
    path = ROOT / "release" / "sample83.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    # the canonical layout produced by the release writer (two-space indent, no trailing newline)
    path.write_text(json.dumps([SAMPLE_83], ensure_ascii=False, indent=2), encoding="utf-8")


def main():
    rng = random.Random(SEED)
    write_lexicons(rng)
    write_sentiment(rng)
    write_lang_gold(rng)
    write_sgdc_eval()
    write_stream(rng)
    write_release()


if __name__ == "__main__":
    main()

"""Independent reference for the bundled synthetic fixture.

Re-implements the STANDARD pipeline, ATIRE BM25, TF-IDF cosine and their
product directly from the formulas, ranks the six documents for every query
and writes the machine-readable evaluation lines the CLI must reproduce.

    python3 tests/oracle/search_oracle.py data/synthetic
"""

import math
import re
import sys
from fractions import Fraction
from pathlib import Path

K1, B = 1.5, 0.75
KS = (1, 3, 5, 10)


def load_stopwords(path):
    words = set()
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line)
    return words


def standard(text, stop):
    out = []
    for tok in re.findall(r"[A-Za-z0-9]+", text):
        tok = tok.lower()
        if tok.isdigit() or len(tok) < 2 or tok in stop:
            continue
        out.append(tok)
    return out


def bm25(q, doc, docs):
    n = len(docs)
    avg = sum(len(d) for d in docs.values()) / n
    score = 0.0
    for t in q:
        df = sum(1 for d in docs.values() if t in d)
        tf = doc.count(t)
        if df == 0 or tf == 0:
            continue
        idf = math.log(n / df)
        score += idf * (K1 + 1) * tf / (K1 * (1 - B + B * len(doc) / avg) + tf)
    return score


def tfidf_vec(tokens, docs):
    n = len(docs)
    vec = {}
    for t in set(tokens):
        df = sum(1 for d in docs.values() if t in d)
        if df == 0:
            continue
        w = tokens.count(t) * math.log(n / df)
        if w != 0:
            vec[t] = w
    return vec


def cosine(a, b):
    na = math.sqrt(sum(v * v for v in a.values()))
    nb = math.sqrt(sum(v * v for v in b.values()))
    if na == 0 or nb == 0:
        return 0.0
    return sum(v * b.get(t, 0.0) for t, v in a.items()) / (na * nb)


def rank(scores):
    return [d for d, _ in sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))]


def f1(p, r):
    return Fraction(0) if p + r == 0 else 2 * p * r / (p + r)


def metric_lines(run, qrels):
    lines, agg, excluded = [], {}, []
    for qid in sorted(run):
        rel = qrels[qid]
        if not rel:
            lines.append(f"excluded\t{qid}\tno_relevant")
            excluded.append(qid)
            continue
        ranking = run[qid]
        for k in KS:
            hits = sum(1 for d in ranking[:k] if d in rel)
            p, r = Fraction(hits, k), Fraction(hits, len(rel))
            for name, v in ((f"P_{k}", p), (f"R_{k}", r), (f"F1_{k}", f1(p, r))):
                lines.append(f"{name}\t{qid}\t{float(v):.6f}")
                agg.setdefault(name, []).append(v)
        rr = next((Fraction(1, i + 1) for i, d in enumerate(ranking) if d in rel), Fraction(0))
        lines.append(f"RR\t{qid}\t{float(rr):.6f}")
        agg.setdefault("RR", []).append(rr)
    for k in KS:
        for name in (f"P_{k}", f"R_{k}", f"F1_{k}"):
            v = sum(agg[name]) / len(agg[name])
            lines.append(f"{name}\tall\t{float(v):.6f}")
    mrr = sum(agg["RR"]) / len(agg["RR"])
    lines.append(f"MRR\tall\t{float(mrr):.6f}")
    lines.append(f"num_q\tall\t{len(agg['RR'])}")
    return "\n".join(lines) + "\n"


def main(root):
    root = Path(root)
    stop = load_stopwords(root.parent / "stopwords_en.txt")
    docs = {p.stem: standard(p.read_text(), stop) for p in sorted((root / "corpus").iterdir())}
    queries = {}
    for line in (root / "queries.tsv").read_text().splitlines():
        if line.strip():
            qid, text = line.split("\t", 1)
            queries[qid] = standard(text, stop)
    qrels = {}
    for line in (root / "qrels.txt").read_text().splitlines():
        if line.strip():
            qid, _, doc, rel = line.split()
            qrels.setdefault(qid, set())
            if rel == "1":
                qrels[qid].add(doc)

    scorers = {
        "bm25": lambda q, d: bm25(q, docs[d], docs),
        "tfidf_cos": lambda q, d: cosine(tfidf_vec(q, docs), tfidf_vec(docs[d], docs)),
        "fused": lambda q, d: bm25(q, docs[d], docs)
        * cosine(tfidf_vec(q, docs), tfidf_vec(docs[d], docs)),
    }
    for name, fn in scorers.items():
        run = {qid: rank({d: fn(q, d) for d in docs}) for qid, q in queries.items()}
        (root / f"expected_{name}.txt").write_text(metric_lines(run, qrels))
        print(name, {qid: r[:3] for qid, r in run.items()})


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/synthetic")

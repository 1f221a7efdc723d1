#!/usr/bin/env python3
"""Regenerate the committed fixture corpus under tests/fixtures/.

Builds a self-contained knowledge-base cache (entity payloads + page HTML),
runs the ingest stage offline against it, and parses the resulting
sentences with the nlp-adapter micro model. Outputs are committed and
hand-verified; rerun this only when the corpus definition changes.
"""

import json
import shutil
import sys
from pathlib import Path

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

# ---------------------------------------------------------------- entities

def ref(qid):
    return {"type": "wikibase-entityid", "value": {"id": qid}}


def date(y, m, d):
    return {"type": "time", "value": {"time": f"+{y:04d}-{m:02d}-{d:02d}T00:00:00Z", "precision": 11}}


ENTITIES = {
    "Q9001": {
        "label": "Victor Hugo",
        "description": "écrivain français",
        "sitelink": "Victor Hugo",
        "claims": [
            ("P19", ref("Q9101")),
            ("P569", date(1802, 2, 26)),
            ("P570", date(1885, 5, 22)),
            ("P106", ref("Q9201")),
            ("P26", ref("Q9301")),
        ],
    },
    "Q9002": {
        "label": "Jeanne d'Arc",
        "description": "héroïne française",
        "sitelink": "Jeanne d'Arc",
        "claims": [("P19", ref("Q9102")), ("P570", date(1431, 5, 30))],
    },
    "Q9003": {
        "label": "Marie Curie",
        "description": "physicienne",
        "sitelink": "Marie Curie",
        "claims": [
            ("P19", ref("Q9103")),
            ("P570", date(1934, 7, 4)),
            ("P106", ref("Q9202")),
            ("P26", ref("Q9302")),
            ("P69", ref("Q9401")),
        ],
    },
    "Q9004": {
        "label": "Louis Pasteur",
        "description": "chimiste",
        "sitelink": "Louis Pasteur",
        "claims": [
            ("P19", ref("Q9104")),
            ("P569", date(1822, 12, 27)),
            ("P106", ref("Q9203")),
            ("P69", ref("Q9402")),
        ],
    },
    "Q9005": {
        "label": "Albert Camus",
        "description": "écrivain",
        "sitelink": "Albert Camus",
        "claims": [
            ("P569", date(1913, 11, 7)),
            ("P106", ref("Q9201")),
            ("P69", ref("Q9403")),
            ("P26", ref("Q9303")),
        ],
    },
    "Q9006": {
        "label": "Jean Rey",
        "description": "savant",
        "sitelink": "Jean Rey",
        "claims": [("P19", ref("Q9105")), ("P69", ref("Q9401"))],
    },
    "Q9007": {
        "label": "Paul Verlaine",
        "description": "poète",
        "sitelink": "Paul Verlaine",
        "claims": [
            ("P569", date(1844, 3, 30)),
            ("P570", date(1896, 1, 8)),
            ("P106", ref("Q9204")),
            ("P26", ref("Q9304")),
        ],
    },
    "Q9008": {
        "label": "George Sand",
        "description": "romancière",
        "aliases": ["Aurore Dupin"],
        "sitelink": "George Sand",
        "claims": [("P19", ref("Q9105")), ("P106", ref("Q9205")), ("P26", ref("Q9305"))],
    },
    # spouses with their own pages
    "Q9301": {
        "label": "Adèle Foucher",
        "sitelink": "Adèle Foucher",
        "claims": [("P26", ref("Q9001"))],
    },
    "Q9302": {
        "label": "Pierre Curie",
        "sitelink": "Pierre Curie",
        "claims": [("P26", ref("Q9003"))],
    },
    "Q9303": {"label": "Francine Faure", "claims": []},
    "Q9304": {"label": "Mathilde Mauté", "claims": []},
    "Q9305": {"label": "Casimir Dudevant", "claims": []},
    # places and institutions
    "Q9101": {"label": "Besançon", "sitelink": "Besançon", "claims": []},
    "Q9102": {"label": "Domrémy", "sitelink": "Domrémy", "claims": []},
    "Q9103": {"label": "Varsovie", "claims": []},
    "Q9104": {"label": "Dole", "claims": []},
    "Q9105": {"label": "Paris", "sitelink": "Paris", "claims": []},
    "Q9401": {
        "label": "Université de Paris",
        "aliases": ["la Sorbonne", "Sorbonne", "Paris"],
        "sitelink": "Université de Paris",
        "claims": [],
    },
    "Q9402": {"label": "École normale supérieure", "claims": []},
    "Q9403": {"label": "Université d'Alger", "claims": []},
    # occupations
    "Q9201": {"label": "écrivain", "claims": []},
    "Q9202": {"label": "physicienne", "claims": []},
    "Q9203": {"label": "chimiste", "claims": []},
    "Q9204": {"label": "poète", "claims": []},
    "Q9205": {"label": "romancière", "claims": []},
    # unrelated entity polluting nothing (negative control for the filter)
    "Q9501": {"label": "Meuse", "claims": []},
}

# ------------------------------------------------------------------- pages

S = {
    1: "Victor Hugo est né le 26 février 1802 à Besançon.",
    2: "Victor Hugo était un écrivain français.",
    3: "Victor Hugo épousa Adèle Foucher en 1822.",
    4: "Victor Hugo est mort le 22 mai 1885 à Paris.",
    5: "Victor Hugo est né à Besançon.",
    6: "Jeanne d'Arc est née à Domrémy.",
    7: "Jeanne d'Arc est morte à Rouen le 30 mai 1431.",
    8: "Marie Curie était une physicienne polonaise.",
    9: "Marie Curie épousa Pierre Curie en 1895.",
    10: "Marie Curie étudia à la Sorbonne.",
    11: "Marie Curie est morte le 4 juillet 1934.",
    12: "Marie Curie est née à Varsovie.",
    13: "Louis Pasteur était un chimiste français.",
    14: "Louis Pasteur est né le 27 décembre 1822 à Dole.",
    15: "Louis Pasteur étudia à l'École normale supérieure.",
    16: "Albert Camus était un écrivain français.",
    17: "Albert Camus est né le 7 novembre 1913.",
    18: "Albert Camus étudia à l'université d'Alger.",
    19: "Albert Camus épousa Francine Faure en 1940.",
    20: "Jean Rey est né à Paris.",
    21: "Jean Rey étudia à l'Université de Paris.",
    22: "Paul Verlaine était un poète français.",
    23: "Paul Verlaine épousa Mathilde Mauté en 1870.",
    24: "Paul Verlaine est né le 30 mars 1844 à Metz.",
    25: "Paul Verlaine est mort le 8 janvier 1896 à Paris.",
    26: "George Sand est née à Paris.",
    27: "George Sand était une romancière française.",
    28: "George Sand épousa Casimir Dudevant en 1822.",
    29: "Aurore Dupin est née à Paris.",
    30: "Louis Pasteur étudia à Besançon.",
}

O = {
    1: "Son œuvre romanesque est immense.",
    2: "Il aimait la mer.",
    3: "Elle est une héroïne de l'histoire de France.",
    4: "Le village est situé sur la Meuse.",
    5: "Elle reçut deux prix Nobel.",
    6: "Ses travaux sur la rage sont célèbres.",
    7: "Il aimait le football.",
    8: "Il publia des travaux de chimie.",
    9: "Son recueil le plus connu reste célèbre.",
    10: "Ses romans champêtres sont célèbres.",
    11: "La ville abrite de nombreux musées.",
    12: "L'université fut fondée au Moyen Âge.",
    13: "La ville est connue pour ses horloges.",
    14: "La maison natale de Jeanne d'Arc attire les visiteurs.",
    15: "Elle épousa Victor Hugo en 1822.",
    16: "Il reçut le prix Nobel de physique.",
}

# Raw page text; cleaning must reduce each sentence to its canonical form.
S1_RAW = "Victor Hugo (prononcé [viktɔʁ yɡo]) est né le 26 février 1802 à Besançon."
S6_RAW = "Jeanne d'Arc (en anglais Joan of Arc) est née à Domrémy."

PAGES = {
    "Victor Hugo": [
        [S1_RAW, S[2]],
        [S[3], S[4]],
        [S[5], O[1], O[2]],
        ["— Sa devise restait célèbre."],
    ],
    "Jeanne d'Arc": [[S6_RAW], [S[7], O[3]]],
    "Domrémy": [[S[6], O[4]], [O[14]]],
    "Marie Curie": [[S[8], S[9]], [S[10], S[11]], [S[12], O[5]]],
    "Louis Pasteur": [[S[13], S[14]], [S[15], O[6]]],
    "Albert Camus": [[S[16], S[17]], [S[18], S[19], O[7]]],
    "Jean Rey": [[S[20], S[21]], [O[8]]],
    "Paul Verlaine": [[S[22], S[23]], [S[24], S[25], O[9]]],
    "George Sand": [[S[26], S[27]], [S[28], S[29], O[10]]],
    "Paris": [[S[26], S[20]], [O[11], S[4], S[25]]],
    "Université de Paris": [[S[10], S[21], O[12]]],
    "Besançon": [[S[5], S[1], S[2]], [S[30], O[13]], ["(page en travaux)"]],
    "Adèle Foucher": [[S[3], O[15]]],
    "Pierre Curie": [[S[9], O[16]]],
}

ITEMS_WITH_PAGES = [
    "Q9001", "Q9002", "Q9003", "Q9004", "Q9005", "Q9006", "Q9007", "Q9008",
    "Q9101", "Q9102", "Q9105", "Q9301", "Q9302", "Q9401",
]


def entity_payload(qid: str, spec: dict) -> dict:
    claims: dict[str, list] = {}
    for prop, datavalue in spec.get("claims", []):
        claims.setdefault(prop, []).append(
            {"mainsnak": {"snaktype": "value", "datavalue": datavalue}}
        )
    entity = {
        "labels": {"fr": {"language": "fr", "value": spec["label"]}},
        "descriptions": (
            {"fr": {"language": "fr", "value": spec["description"]}}
            if spec.get("description")
            else {}
        ),
        "aliases": {
            "fr": [{"language": "fr", "value": a} for a in spec.get("aliases", [])]
        },
        "claims": claims,
        "sitelinks": (
            {"frwiki": {"site": "frwiki", "title": spec["sitelink"]}}
            if spec.get("sitelink")
            else {}
        ),
    }
    return {"entities": {qid: entity}}


def page_html(paragraphs: list[list[str]]) -> str:
    body = "".join(f"<p>{' '.join(sentences)}</p>" for sentences in paragraphs)
    return f"<html><body><section>{body}</section></body></html>"


def main():
    sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))
    from relexkit.cli import main as relexkit_main
    from relexkit.ingest.kb import DiskCache

    from nlp_adapter.cli import parse_batch

    FIXTURES.mkdir(parents=True, exist_ok=True)
    cache_dir = FIXTURES / "cache"
    if cache_dir.exists():
        shutil.rmtree(cache_dir)
    cache = DiskCache(cache_dir)
    import hashlib

    for qid, spec in ENTITIES.items():
        cache.put(f"entity-{qid}-fr-latest", entity_payload(qid, spec))
    for title, paragraphs in PAGES.items():
        digest = hashlib.sha1(title.encode("utf-8")).hexdigest()[:16]
        cache.put(f"page-fr-{digest}-latest", {"title": title, "html": page_html(paragraphs)})

    (FIXTURES / "items.txt").write_text(
        "\n".join(ITEMS_WITH_PAGES) + "\n", encoding="utf-8"
    )
    # Seed chosen so the committed dev/test splits exercise patterns that are
    # also present in train; see the expected metrics in the acceptance suite.
    # cache_dir stays unset: runs pass --cache-dir (keeps the config portable).
    config = {
        "language": "fr",
        "fuzzy_threshold": 0.9,
        "semantic_threshold": 0.0,
        "key_mode": "lemma",
        "split_ratios": [0.8, 0.1, 0.1],
        "seed": 26,
    }
    (FIXTURES / "config.json").write_text(
        json.dumps(config, ensure_ascii=False, indent=1) + "\n", encoding="utf-8"
    )

    rc = relexkit_main(
        [
            "ingest",
            "--config", str(FIXTURES / "config.json"),
            "--items", str(FIXTURES / "items.txt"),
            "--cache-dir", str(cache_dir),
            "--offline",
            "--out-sentences", str(FIXTURES / "sentences.jsonl"),
            "--out-statements", str(FIXTURES / "statements.jsonl"),
        ]
    )
    if rc != 0:
        raise SystemExit(f"ingest failed with exit code {rc}")

    sentences = [
        json.loads(line)["text"]
        for line in (FIXTURES / "sentences.jsonl").read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    document = parse_batch(sentences, "micro-fr")
    (FIXTURES / "parses.conllu").write_text(document, encoding="utf-8")
    print(f"fixtures written to {FIXTURES}")
    print(f"  sentences: {len(sentences)} ({len(set(sentences))} distinct)")


if __name__ == "__main__":
    main()

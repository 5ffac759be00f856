"""Regenerates the bundled pipeline fixture (run from this directory).

Six fictional person entities across two languages: an entity dump in the
standard claims schema, one XML dump per language with markup and deliberately
rejectable sentences, POS and translation lexicons sized to the fixture
vocabulary, and the pipeline config.  Output files are committed; this script
exists so the fixture can be audited and evolved.
"""

import json
from pathlib import Path

HERE = Path(__file__).parent


def snak(pid, datatype, value, snaktype="value"):
    out = {"snaktype": snaktype, "property": pid, "datatype": datatype}
    if snaktype == "value":
        out["datavalue"] = {"value": value, "type": datatype}
    return out


def claim(pid, datatype, value, rank="normal", qualifiers=None, snaktype="value"):
    mainsnak = {"snaktype": snaktype, "datatype": datatype}
    if snaktype == "value":
        mainsnak["datavalue"] = {"value": value, "type": datatype}
    out = {"mainsnak": mainsnak, "rank": rank, "type": "statement"}
    if qualifiers:
        out["qualifiers"] = qualifiers
        out["qualifiers-order"] = list(qualifiers)
    return out


def item(qid):
    return {"entity-type": "item", "id": qid}


def time(value, precision):
    return {"time": value, "precision": precision, "calendarmodel": "http://www.wikidata.org/entity/Q1985727"}


def quantity(amount, unit_qid=None):
    unit = f"http://www.wikidata.org/entity/{unit_qid}" if unit_qid else "1"
    return {"amount": amount, "unit": unit}


def labels(en, hi=None):
    out = {"en": {"language": "en", "value": en}}
    if hi:
        out["hi"] = {"language": "hi", "value": hi}
    return out


LABEL_ONLY = [
    ("Q668", "India", "भारत"),
    ("Q1156", "Mumbai", "मुंबई"),
    ("Q1352", "Chennai", "चेन्नई"),
    ("Q1353", "Delhi", "दिल्ली"),
    ("Q1361", "Bangalore", "बेंगलुरु"),
    ("Q1362", "Pune", "पुणे"),
    ("Q1568", "Hindi", "हिन्दी"),
    ("Q1860", "English", "अंग्रेज़ी"),
    ("Q901", "scientist", "वैज्ञानिक"),
    ("Q33999", "actor", "अभिनेता"),
    ("Q36180", "writer", "लेखक"),
    ("Q82955", "politician", "राजनेता"),
    ("Q177220", "singer", "गायिका"),
    ("Q12299841", "cricketer", "क्रिकेटर"),
    ("Q11573", "metre", "मीटर"),
    ("Q6581097", "male", "पुरुष"),
    ("Q6581072", "female", "महिला"),
    ("Q9010", "University of Mumbai", "मुंबई विश्वविद्यालय"),
    ("Q9020", "Member of Parliament", "संसद सदस्य"),
    ("Q9021", "National Progressive Party", "राष्ट्रीय प्रगतिशील पार्टी"),
    ("Q9022", "Indian Institute of Science", "भारतीय विज्ञान संस्थान"),
    ("Q9023", "India national cricket team", "भारत राष्ट्रीय क्रिकेट टीम"),
    ("Q9024", "Sharad Munim", "शरद मुनीम"),
    ("Q9068", "Padma Shri", "पद्म श्री"),
    ("Q9069", "Bhatnagar Prize", "भटनागर पुरस्कार"),
    ("Q9070", "National Film Award", "राष्ट्रीय फ़िल्म पुरस्कार"),
    ("Q9071", "Sahitya Akademi Award", "साहित्य अकादमी पुरस्कार"),
]

PEOPLE = {
    "Q9001": {
        "labels": ("Tina Munim", "तीना मुनीम"),
        "claims": {
            "P569": [claim("P569", "time", time("+1955-02-11T00:00:00Z", 11))],
            "P106": [
                claim("P106", "wikibase-item", item("Q33999")),
                claim("P106", "wikibase-item", item("Q177220"), rank="deprecated"),
            ],
            "P27": [
                claim("P27", "wikibase-item", item("Q668")),
                claim("P27", "wikibase-item", item("Q668")),
            ],
            "P19": [claim("P19", "wikibase-item", item("Q1156"))],
            "P1477": [claim("P1477", "monolingualtext", {"text": "Tina Munim", "language": "en"})],
            "P2048": [claim("P2048", "quantity", quantity("+1.6", "Q11573"))],
            "P166": [claim("P166", "wikibase-item", item("Q9068"))],
            "P26": [claim("P26", "wikibase-item", item("Q9002"))],
            "P1412": [claim("P1412", "wikibase-item", item("Q1568"))],
            "P69": [claim("P69", "wikibase-item", item("Q9010"))],
            "P22": [claim("P22", "wikibase-item", item("Q9024"))],
            "P345": [claim("P345", "external-id", "tt0000001")],
        },
    },
    "Q9002": {
        "labels": ("Rajat Verma", "रजत वर्मा"),
        "claims": {
            "P569": [claim("P569", "time", time("+1948-05-20T00:00:00Z", 11))],
            "P570": [claim("P570", "time", time("+2015-00-00T00:00:00Z", 9))],
            "P106": [claim("P106", "wikibase-item", item("Q82955"))],
            "P39": [
                claim(
                    "P39",
                    "wikibase-item",
                    item("Q9020"),
                    qualifiers={"P580": [snak("P580", "time", time("+1999-00-00T00:00:00Z", 9))]},
                )
            ],
            "P102": [claim("P102", "wikibase-item", item("Q9021"))],
            "P27": [claim("P27", "wikibase-item", item("Q668"))],
            "P19": [claim("P19", "wikibase-item", item("Q1353"))],
            "P69": [claim("P69", "wikibase-item", item("Q9010"))],
            "P21": [claim("P21", "wikibase-item", item("Q6581097"))],
            "P1971": [claim("P1971", "quantity", quantity("+2"))],
        },
    },
    "Q9003": {
        "labels": ("Meera Pillai", "मीरा पिल्लै"),
        "claims": {
            "P569": [claim("P569", "time", time("+1962-08-02T00:00:00Z", 11))],
            "P106": [claim("P106", "wikibase-item", item("Q901"))],
            "P166": [claim("P166", "wikibase-item", item("Q9069"))],
            "P108": [claim("P108", "wikibase-item", item("Q9022"))],
            "P27": [claim("P27", "wikibase-item", item("Q668"))],
            "P69": [claim("P69", "wikibase-item", item("Q9022"))],
            "P1412": [claim("P1412", "wikibase-item", item("Q1860"))],
            "P19": [claim("P19", "wikibase-item", item("Q1361"))],
            "P1971": [claim("P1971", "quantity", quantity("+2"))],
            "P21": [claim("P21", "wikibase-item", item("Q6581072"))],
            "P570": [claim("P570", "time", None, snaktype="novalue")],
        },
    },
    "Q9004": {
        "labels": ("Arun Khanna", "अरुण खन्ना"),
        "claims": {
            "P569": [claim("P569", "time", time("+1975-11-30T00:00:00Z", 11))],
            "P106": [claim("P106", "wikibase-item", item("Q12299841"))],
            "P54": [
                claim(
                    "P54",
                    "wikibase-item",
                    item("Q9023"),
                    qualifiers={"P580": [snak("P580", "time", time("+1996-00-00T00:00:00Z", 9))]},
                )
            ],
            "P27": [claim("P27", "wikibase-item", item("Q668"))],
            "P19": [claim("P19", "wikibase-item", item("Q1156"))],
            "P2048": [claim("P2048", "quantity", quantity("+1.82", "Q11573"))],
            "P1477": [claim("P1477", "monolingualtext", {"text": "Arun Dev Khanna", "language": "en"})],
            "P21": [claim("P21", "wikibase-item", item("Q6581097"))],
            "P69": [claim("P69", "wikibase-item", item("Q9010"))],
        },
    },
    "Q9005": {
        "labels": ("Lalita Rao", "ललिता राव"),
        "claims": {
            "P569": [claim("P569", "time", time("+1980-03-15T00:00:00Z", 11))],
            "P106": [claim("P106", "wikibase-item", item("Q177220"))],
            "P166": [claim("P166", "wikibase-item", item("Q9070"))],
            "P27": [claim("P27", "wikibase-item", item("Q668"))],
            "P19": [claim("P19", "wikibase-item", item("Q1352"))],
            "P1412": [claim("P1412", "wikibase-item", item("Q1568"))],
            "P26": [claim("P26", "wikibase-item", item("Q9004"))],
            "P69": [claim("P69", "wikibase-item", item("Q9010"))],
            "P2048": [claim("P2048", "quantity", quantity("+1.65", "Q11573"))],
        },
    },
    "Q9006": {
        "labels": ("Vikram Joshi", "विक्रम जोशी"),
        "claims": {
            "P569": [claim("P569", "time", time("+1935-00-00T00:00:00Z", 9))],
            "P570": [claim("P570", "time", time("+2001-06-10T00:00:00Z", 11))],
            "P106": [claim("P106", "wikibase-item", item("Q36180"))],
            "P166": [claim("P166", "wikibase-item", item("Q9071"))],
            "P27": [claim("P27", "wikibase-item", item("Q668"))],
            "P69": [claim("P69", "wikibase-item", item("Q9010"))],
            "P1477": [claim("P1477", "monolingualtext", {"text": "विक्रम हरि जोशी", "language": "hi"})],
            "P1971": [claim("P1971", "quantity", quantity("+3"))],
            "P19": [claim("P19", "wikibase-item", item("Q1362"))],
        },
    },
}

LONG_HI = " ".join(["शब्द"] * 100) + " अंत।"
LONG_EN = " ".join(["word"] * 100) + " end."

PAGES_HI = {
    "Q9001": (
        "तीना मुनीम",
        "'''तीना मुनीम''' का जन्म 11 February 1955 को [[मुंबई]] में हुआ था। "
        "वह भारत की प्रसिद्ध अभिनेता हैं।<ref>फ़िल्म कोश</ref> छोटा वाक्य।\n"
        "== करियर ==\n"
        "तीना मुनीम को पद्म श्री पुरस्कार मिला। उनकी ऊंचाई 1.6 मीटर है। "
        "This sentence is English inside a Hindi page.\n"
        "== अन्य ==\n"
        "बहुत ही बिल्कुल अत्यंत वाकई।",
    ),
    "Q9002": (
        "रजत वर्मा",
        "'''रजत वर्मा''' का जन्म 20 May 1948 को [[दिल्ली]] में हुआ था। रजत वर्मा एक राजनेता थे।\n"
        "== राजनीति ==\n"
        "रजत वर्मा 1999 में संसद सदस्य बने। रजत वर्मा का निधन 2015 में हुआ। छोटा वाक्य।",
    ),
    "Q9003": (
        "मीरा पिल्लै",
        "'''मीरा पिल्लै''' का जन्म 2 August 1962 को [[बेंगलुरु]] में हुआ था। मीरा पिल्लै एक प्रसिद्ध वैज्ञानिक हैं।\n"
        "== शोध ==\n"
        "मीरा पिल्लै को भटनागर पुरस्कार मिला। मीरा पिल्लै भारतीय विज्ञान संस्थान में काम करती हैं।",
    ),
    "Q9004": (
        "अरुण खन्ना",
        "'''अरुण खन्ना''' का जन्म 30 November 1975 को [[मुंबई]] में हुआ था। "
        "अरुण खन्ना भारत राष्ट्रीय क्रिकेट टीम के लिए खेले।\n"
        "== जीवन ==\n"
        "अरुण खन्ना की ऊंचाई 1.82 मीटर है। बहुत ही बिल्कुल अत्यंत वाकई।",
    ),
    "Q9005": (
        "ललिता राव",
        "'''ललिता राव''' का जन्म 15 March 1980 को [[चेन्नई]] में हुआ था। ललिता राव एक प्रसिद्ध गायिका हैं।\n"
        "== संगीत ==\n"
        "ललिता राव को राष्ट्रीय फ़िल्म पुरस्कार मिला। ललिता राव ने मुंबई विश्वविद्यालय से शिक्षा ली।",
    ),
    "Q9006": (
        "विक्रम जोशी",
        "'''विक्रम जोशी''' का जन्म 1935 में [[पुणे]] में हुआ था। विक्रम जोशी एक लेखक थे।\n"
        "== साहित्य ==\n"
        "विक्रम जोशी को साहित्य अकादमी पुरस्कार मिला। विक्रम जोशी का निधन 10 June 2001 को हुआ। " + LONG_HI,
    ),
}

PAGES_EN = {
    "Q9001": (
        "Tina Munim",
        "'''Tina Munim''' was born on 11 February 1955 in [[Mumbai]]. "
        "Tina Munim received the Padma Shri award.<ref>Film guide</ref> Short sentence here.\n"
        "== Career ==\n"
        "Tina Munim studied at the University of Mumbai. Tina Munim has a height of 1.6 metre. "
        "यह वाक्य हिन्दी में है।\n"
        "== Trivia ==\n"
        "very quite rather so too.",
    ),
    "Q9002": (
        "Rajat Verma",
        "'''Rajat Verma''' was born on 20 May 1948 in [[Delhi]]. Rajat Verma was a politician in India.\n"
        "== Politics ==\n"
        "Rajat Verma held the position of Member of Parliament. Rajat Verma died in 2015. Short sentence here.",
    ),
    "Q9003": (
        "Meera Pillai",
        "'''Meera Pillai''' was born on 2 August 1962 in [[Bangalore]]. Meera Pillai is a scientist.\n"
        "== Research ==\n"
        "Meera Pillai received the Bhatnagar Prize. Meera Pillai works at the Indian Institute of Science.",
    ),
    "Q9004": (
        "Arun Khanna",
        "'''Arun Khanna''' was born on 30 November 1975 in [[Mumbai]]. "
        "Arun Khanna played for the India national cricket team.\n"
        "== Life ==\n"
        "Arun Khanna has a height of 1.82 metre. very quite rather so too.",
    ),
    "Q9005": (
        "Lalita Rao",
        "'''Lalita Rao''' was born on 15 March 1980 in [[Chennai]]. Lalita Rao is a singer in Hindi films.\n"
        "== Music ==\n"
        "Lalita Rao received the National Film Award. Lalita Rao studied at the University of Mumbai.",
    ),
    "Q9006": (
        "Vikram Joshi",
        "'''Vikram Joshi''' was born in 1935 in [[Pune]]. Vikram Joshi was a writer.\n"
        "== Works ==\n"
        "Vikram Joshi received the Sahitya Akademi Award. Vikram Joshi died on 10 June 2001. " + LONG_EN,
    ),
}

TRANSLATION_HI_EN = {
    "तीना": "Tina", "मुनीम": "Munim", "रजत": "Rajat", "वर्मा": "Verma",
    "मीरा": "Meera", "पिल्लै": "Pillai", "अरुण": "Arun", "खन्ना": "Khanna",
    "ललिता": "Lalita", "राव": "Rao", "विक्रम": "Vikram", "जोशी": "Joshi",
    "का": "of", "की": "of", "के": "of", "को": "to", "में": "in", "से": "from",
    "ने": "by", "और": "and", "एक": "a", "वह": "she", "उनकी": "her", "लिए": "for",
    "जन्म": "birth", "तिथि": "date", "हुआ": "born", "था": "was", "थे": "was",
    "है": "is", "हैं": "is", "बने": "became", "रहे": "remained", "मिला": "received",
    "निधन": "death", "खेले": "played", "ली": "at", "करती": "works", "काम": "work",
    "अभिनेता": "actor", "राजनेता": "politician", "वैज्ञानिक": "scientist",
    "गायिका": "singer", "लेखक": "writer", "क्रिकेटर": "cricketer",
    "भारत": "India", "भारतीय": "Indian", "मुंबई": "Mumbai", "दिल्ली": "Delhi",
    "बेंगलुरु": "Bangalore", "चेन्नई": "Chennai", "पुणे": "Pune",
    "प्रसिद्ध": "famous", "पुरस्कार": "award", "पद्म": "Padma", "श्री": "Shri",
    "भटनागर": "Bhatnagar", "साहित्य": "Sahitya", "अकादमी": "Akademi",
    "राष्ट्रीय": "national", "फ़िल्म": "film", "संगीत": "music",
    "विश्वविद्यालय": "university", "विज्ञान": "science", "संस्थान": "institute",
    "संसद": "parliament", "सदस्य": "member", "पद": "position",
    "टीम": "team", "क्रिकेट": "cricket", "ऊंचाई": "height", "मीटर": "metre",
    "शिक्षा": "educated", "स्थान": "place", "नागरिक": "citizen", "शोध": "research",
}

POS_HI = {
    **{token: "NOUN" for token in (
        "तीना मुनीम रजत वर्मा मीरा पिल्लै अरुण खन्ना ललिता राव विक्रम जोशी "
        "जन्म पुरस्कार ऊंचाई टीम संस्थान विश्वविद्यालय निधन लेखक गायिका वैज्ञानिक "
        "राजनेता अभिनेता संसद सदस्य शिक्षा मीटर फ़िल्म क्रिकेट भारत मुंबई दिल्ली "
        "बेंगलुरु चेन्नई पुणे पार्टी शब्द"
    ).split()},
    **{token: "VERB" for token in "हुआ था थे है हैं मिला बने रहे खेले ली करती".split()},
}

POS_EN = {
    **{token: "NOUN" for token in (
        "Tina Munim Rajat Verma Meera Pillai Arun Khanna Lalita Rao Vikram Joshi "
        "birth award height team institute university death writer singer scientist "
        "politician actor parliament member education metre film cricket India Mumbai "
        "Delhi Bangalore Chennai Pune Prize Award position word"
    ).split()},
    **{token: "VERB" for token in "born was is received studied played died married has works held".split()},
}

DUMP_TEMPLATE = """<mediawiki xmlns="http://www.mediawiki.org/xml/export-0.10/" xml:lang="{lang}">
  <siteinfo>
    <sitename>FixturePedia</sitename>
    <dbname>{lang}fixture</dbname>
  </siteinfo>
{pages}
</mediawiki>
"""

PAGE_TEMPLATE = """  <page>
    <title>{title}</title>
    <ns>0</ns>
    <id>{page_id}</id>
    <revision>
      <id>1{page_id}</id>
      <format>text/x-wiki</format>
      <text bytes="{nbytes}" xml:space="preserve">{text}</text>
    </revision>
  </page>"""

REDIRECT_TEMPLATE = """  <page>
    <title>{title}</title>
    <ns>0</ns>
    <id>{page_id}</id>
    <redirect title="{target}" />
    <revision>
      <id>1{page_id}</id>
      <text bytes="30">#REDIRECT [[{target}]]</text>
    </revision>
  </page>"""


def xml_escape(text):
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def write_dump(path, pages, lang, redirect_title, redirect_target):
    rendered = []
    page_id = 100 if lang == "hi" else 200
    for _qid, (title, text) in pages.items():
        rendered.append(
            PAGE_TEMPLATE.format(
                title=xml_escape(title),
                page_id=page_id,
                nbytes=len(text.encode("utf-8")),
                text=xml_escape(text),
            )
        )
        page_id += 1
    rendered.append(
        REDIRECT_TEMPLATE.format(title=xml_escape(redirect_title), page_id=page_id, target=xml_escape(redirect_target))
    )
    path.write_text(DUMP_TEMPLATE.format(lang=lang, pages="\n".join(rendered)), encoding="utf-8")


def dump_json(path, data):
    path.write_text(json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def main():
    docs = []
    for qid, spec in PEOPLE.items():
        en, hi = spec["labels"]
        docs.append({"id": qid, "labels": labels(en, hi), "claims": spec["claims"]})
    for qid, en, hi in LABEL_ONLY:
        docs.append({"id": qid, "labels": labels(en, hi), "claims": {}})
    with open(HERE / "entities.jsonl", "w", encoding="utf-8") as handle:
        for doc in docs:
            handle.write(json.dumps(doc, ensure_ascii=False, sort_keys=True) + "\n")

    write_dump(HERE / "dump_hi.xml", PAGES_HI, "hi", "टीना मुनीम", "तीना मुनीम")
    write_dump(HERE / "dump_en.xml", PAGES_EN, "en", "Tina Ambani", "Tina Munim")

    dump_json(HERE / "entity_map_hi.json", {title: qid for qid, (title, _) in PAGES_HI.items()})
    dump_json(HERE / "entity_map_en.json", {title: qid for qid, (title, _) in PAGES_EN.items()})
    dump_json(HERE / "translation_lexicon.json", {"hi-en": TRANSLATION_HI_EN})
    dump_json(HERE / "pos_lexicon_hi.json", POS_HI)
    dump_json(HERE / "pos_lexicon_en.json", POS_EN)
    dump_json(
        HERE / "config.json",
        {
            "languages": ["hi", "en"],
            "paths": {
                "dumps": {"hi": "dump_hi.xml", "en": "dump_en.xml"},
                "entities": "entities.jsonl",
            },
            "entity_maps": {"hi": "entity_map_hi.json", "en": "entity_map_en.json"},
            "lexicons": {"hi": "pos_lexicon_hi.json", "en": "pos_lexicon_en.json"},
            "translation_lexicon": "translation_lexicon.json",
            "embed_dim": 64,
            "providers": "mock",
            "stage1": {"tau": 0.65, "k": 10},
            "stage2": {"selector": "overlap", "cutoff": 0.5},
            "seed": 13,
            "annotation": {"quota": 60, "top_n": 4, "admin_token": "fixture-admin"},
        },
    )
    print(f"fixture written to {HERE}")


if __name__ == "__main__":
    main()

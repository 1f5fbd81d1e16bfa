#!/usr/bin/env python3
"""Regenerate fixtures/disgenet-mini.nt and models/slots/diseases.json.

The mini graph is synthetic: entity names and identifiers are realistic,
association records (papers, evidence sentences, scores) are invented for
desk-scale testing and must never be read as curated biology.
"""

from __future__ import annotations

import json
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]

NS = {
    "rdf_type": "http://www.w3.org/1999/02/22-rdf-syntax-ns#type",
    "title": "http://purl.org/dc/terms/title",
    "identifier": "http://purl.org/dc/terms/identifier",
    "description": "http://purl.org/dc/terms/description",
    "refers_to": "http://semanticscience.org/resource/SIO_000628",
    "has_evidence": "http://semanticscience.org/resource/SIO_000772",
    "represented_by": "http://semanticscience.org/resource/SIO_000205",
    "has_value": "http://semanticscience.org/resource/SIO_000300",
    "disease_cls": "http://ncicb.nci.nih.gov/xml/owl/EVS/Thesaurus.owl#C7057",
    "gene_cls": "http://ncicb.nci.nih.gov/xml/owl/EVS/Thesaurus.owl#C16612",
    "therapeutic": "http://rdf.disgenet.org/resource/ontology/TherapeuticAssociation",
    "biomarker": "http://rdf.disgenet.org/resource/ontology/BiomarkerAssociation",
    "protein_class": "http://example.org/kgvb/vocab#proteinClass",
    "xsd_double": "http://www.w3.org/2001/XMLSchema#double",
}

# (title, UMLS CUI, DOID)
DISEASES = [
    ("Asthma", "C0004096", "DOID:2841"),
    ("Breast Carcinoma", "C0678222", "DOID:3459"),
    ("Alzheimer Disease", "C0002395", "DOID:10652"),
    ("Type 2 Diabetes Mellitus", "C0011860", "DOID:9352"),
    ("Parkinson Disease", "C0030567", "DOID:14330"),
    ("Rheumatoid Arthritis", "C0003873", "DOID:7148"),
    ("Schizophrenia", "C0036341", "DOID:5419"),
    ("Colorectal Carcinoma", "C0009402", "DOID:9256"),
    ("Cystic Fibrosis", "C0010674", "DOID:1485"),
    ("Lung Carcinoma", "C0684249", "DOID:3905"),
    ("Melanoma", "C0025202", "DOID:1909"),
    ("Crohn Disease", "C0010346", "DOID:8778"),
]

# (symbol, NCBI gene id, protein class or None)
GENES = [
    ("TP53", 7157, "transcription factor"),
    ("BRCA1", 672, None),
    ("EGFR", 1956, "kinase"),
    ("TNF", 7124, "cytokine"),
    ("IL6", 3569, "cytokine"),
    ("APOE", 348, None),
    ("CFTR", 1080, None),
    ("APP", 351, None),
    ("SNCA", 6622, None),
    ("INS", 3630, None),
    ("BRAF", 673, "kinase"),
    ("KRAS", 3845, None),
    ("ESR1", 2099, "transcription factor"),
    ("IL13", 3596, "cytokine"),
    ("ADRB2", 154, "receptor"),
    ("PTPN22", 26191, None),
    ("DRD2", 1813, "receptor"),
    ("LRRK2", 120892, "kinase"),
]

PROTEIN_CLASSES = ["kinase", "transcription factor", "cytokine", "receptor"]

# (gene symbol, disease title, association kind, paper count, score)
ASSOCIATIONS = [
    ("TP53", "Breast Carcinoma", "B", 5, 0.92),
    ("TP53", "Colorectal Carcinoma", "B", 3, 0.85),
    ("TP53", "Lung Carcinoma", "B", 2, 0.80),
    ("TP53", "Melanoma", "B", 1, 0.55),
    ("BRCA1", "Breast Carcinoma", "B", 4, 0.90),
    ("EGFR", "Lung Carcinoma", "T", 4, 0.88),
    ("EGFR", "Colorectal Carcinoma", "T", 2, 0.70),
    ("EGFR", "Breast Carcinoma", "T", 1, 0.52),
    ("KRAS", "Colorectal Carcinoma", "B", 3, 0.84),
    ("KRAS", "Lung Carcinoma", "B", 2, 0.75),
    ("KRAS", "Melanoma", "B", 1, 0.50),
    ("BRAF", "Melanoma", "T", 4, 0.89),
    ("BRAF", "Colorectal Carcinoma", "T", 2, 0.72),
    ("BRAF", "Lung Carcinoma", "T", 1, 0.48),
    ("IL13", "Asthma", "B", 3, 0.78),
    ("ADRB2", "Asthma", "T", 2, 0.74),
    ("IL6", "Asthma", "B", 1, 0.45),
    ("TNF", "Asthma", "B", 1, 0.42),
    ("TNF", "Rheumatoid Arthritis", "T", 3, 0.86),
    ("TNF", "Crohn Disease", "T", 2, 0.79),
    ("TNF", "Type 2 Diabetes Mellitus", "B", 1, 0.40),
    ("TNF", "Schizophrenia", "B", 1, 0.30),
    ("IL6", "Rheumatoid Arthritis", "B", 2, 0.68),
    ("IL6", "Type 2 Diabetes Mellitus", "B", 2, 0.62),
    ("IL6", "Crohn Disease", "B", 1, 0.44),
    ("IL6", "Colorectal Carcinoma", "B", 1, 0.38),
    ("APOE", "Alzheimer Disease", "B", 4, 0.91),
    ("APOE", "Parkinson Disease", "B", 1, 0.41),
    ("APOE", "Type 2 Diabetes Mellitus", "B", 1, 0.35),
    ("APP", "Alzheimer Disease", "B", 3, 0.83),
    ("SNCA", "Parkinson Disease", "B", 3, 0.82),
    ("SNCA", "Alzheimer Disease", "B", 1, 0.39),
    ("LRRK2", "Parkinson Disease", "B", 2, 0.77),
    ("LRRK2", "Crohn Disease", "B", 1, 0.36),
    ("CFTR", "Cystic Fibrosis", "B", 4, 0.95),
    ("CFTR", "Lung Carcinoma", "B", 1, 0.37),
    ("INS", "Type 2 Diabetes Mellitus", "T", 3, 0.81),
    ("DRD2", "Schizophrenia", "T", 3, 0.80),
    ("DRD2", "Parkinson Disease", "T", 1, 0.43),
    ("ESR1", "Breast Carcinoma", "T", 3, 0.76),
    ("ESR1", "Lung Carcinoma", "T", 1, 0.33),
    ("PTPN22", "Rheumatoid Arthritis", "B", 2, 0.66),
    ("PTPN22", "Crohn Disease", "B", 1, 0.34),
    ("PTPN22", "Type 2 Diabetes Mellitus", "B", 1, 0.32),
    ("IL13", "Crohn Disease", "B", 1, 0.31),
]

# Extra gazetteer-only diseases (synthetic CUIs; no triples in the mini graph).
EXTRA_DISEASES = [
    "Hypertension", "Migraine", "Epilepsy", "Psoriasis", "Osteoporosis",
    "Multiple Sclerosis", "Ulcerative Colitis", "Celiac Disease", "Gout",
    "Atrial Fibrillation", "Heart Failure", "Coronary Artery Disease",
    "Myocardial Infarction", "Stroke", "Chronic Obstructive Pulmonary Disease",
    "Pulmonary Fibrosis", "Pneumonia", "Tuberculosis", "Influenza",
    "Hepatitis B", "Hepatitis C", "Liver Cirrhosis", "Fatty Liver Disease",
    "Pancreatitis", "Gallstones", "Peptic Ulcer Disease", "Gastritis",
    "Irritable Bowel Syndrome", "Diverticulitis", "Appendicitis",
    "Chronic Kidney Disease", "Kidney Stones", "Glomerulonephritis",
    "Polycystic Kidney Disease", "Urinary Tract Infection", "Prostate Carcinoma",
    "Bladder Carcinoma", "Ovarian Carcinoma", "Cervical Carcinoma",
    "Endometrial Carcinoma", "Pancreatic Carcinoma", "Gastric Carcinoma",
    "Esophageal Carcinoma", "Hepatocellular Carcinoma", "Renal Cell Carcinoma",
    "Thyroid Carcinoma", "Glioblastoma", "Neuroblastoma", "Retinoblastoma",
    "Osteosarcoma", "Ewing Sarcoma", "Hodgkin Lymphoma", "Non-Hodgkin Lymphoma",
    "Multiple Myeloma", "Acute Myeloid Leukemia", "Acute Lymphoblastic Leukemia",
    "Chronic Myeloid Leukemia", "Chronic Lymphocytic Leukemia", "Myelodysplastic Syndrome",
    "Anemia", "Sickle Cell Anemia", "Thalassemia", "Hemophilia",
    "Von Willebrand Disease", "Deep Vein Thrombosis", "Pulmonary Embolism",
    "Type 1 Diabetes Mellitus", "Gestational Diabetes", "Hypothyroidism",
    "Hyperthyroidism", "Graves Disease", "Hashimoto Thyroiditis",
    "Addison Disease", "Cushing Syndrome", "Acromegaly", "Hypopituitarism",
    "Polycystic Ovary Syndrome", "Endometriosis", "Infertility",
    "Preeclampsia", "Obesity", "Metabolic Syndrome", "Hyperlipidemia",
    "Hypercholesterolemia", "Phenylketonuria", "Galactosemia", "Wilson Disease",
    "Hemochromatosis", "Gaucher Disease", "Tay-Sachs Disease", "Fabry Disease",
    "Pompe Disease", "Niemann-Pick Disease", "Marfan Syndrome",
    "Ehlers-Danlos Syndrome", "Osteogenesis Imperfecta", "Achondroplasia",
    "Duchenne Muscular Dystrophy", "Becker Muscular Dystrophy",
    "Myotonic Dystrophy", "Spinal Muscular Atrophy", "Amyotrophic Lateral Sclerosis",
    "Huntington Disease", "Friedreich Ataxia", "Charcot-Marie-Tooth Disease",
    "Guillain-Barre Syndrome", "Myasthenia Gravis", "Narcolepsy", "Insomnia",
    "Sleep Apnea", "Restless Legs Syndrome", "Bipolar Disorder",
    "Major Depressive Disorder", "Generalized Anxiety Disorder",
    "Panic Disorder", "Obsessive-Compulsive Disorder", "Post-Traumatic Stress Disorder",
    "Autism Spectrum Disorder", "Attention Deficit Hyperactivity Disorder",
    "Anorexia Nervosa", "Bulimia Nervosa", "Tourette Syndrome",
    "Down Syndrome", "Fragile X Syndrome", "Turner Syndrome",
    "Klinefelter Syndrome", "Prader-Willi Syndrome", "Angelman Syndrome",
    "Rett Syndrome", "Williams Syndrome", "DiGeorge Syndrome",
    "Noonan Syndrome", "Neurofibromatosis Type 1", "Neurofibromatosis Type 2",
    "Tuberous Sclerosis", "Li-Fraumeni Syndrome", "Lynch Syndrome",
    "Familial Adenomatous Polyposis", "Peutz-Jeghers Syndrome",
    "Ataxia Telangiectasia", "Xeroderma Pigmentosum", "Bloom Syndrome",
    "Fanconi Anemia", "Systemic Lupus Erythematosus", "Sjogren Syndrome",
    "Systemic Sclerosis", "Dermatomyositis", "Polymyositis",
    "Ankylosing Spondylitis", "Psoriatic Arthritis", "Reactive Arthritis",
    "Osteoarthritis", "Fibromyalgia", "Polymyalgia Rheumatica",
    "Giant Cell Arteritis", "Kawasaki Disease", "Behcet Disease",
    "Sarcoidosis", "Amyloidosis", "Vitiligo", "Alopecia Areata",
    "Atopic Dermatitis", "Contact Dermatitis", "Acne Vulgaris", "Rosacea",
    "Urticaria", "Pemphigus Vulgaris", "Bullous Pemphigoid",
    "Basal Cell Carcinoma", "Squamous Cell Carcinoma", "Actinic Keratosis",
    "Glaucoma", "Cataract", "Macular Degeneration", "Diabetic Retinopathy",
    "Retinitis Pigmentosa", "Uveitis", "Conjunctivitis", "Keratoconus",
    "Otitis Media", "Meniere Disease", "Tinnitus", "Hearing Loss",
    "Allergic Rhinitis", "Chronic Sinusitis", "Nasal Polyps",
    "Gastroesophageal Reflux Disease", "Barrett Esophagus", "Lactose Intolerance",
    "Short Bowel Syndrome", "Primary Biliary Cholangitis", "Primary Sclerosing Cholangitis",
    "Autoimmune Hepatitis", "Alpha-1 Antitrypsin Deficiency", "Bronchiectasis",
    "Bronchiolitis", "Pleural Effusion", "Pneumothorax", "Pulmonary Hypertension",
    "Aortic Aneurysm", "Aortic Stenosis", "Mitral Valve Prolapse",
    "Cardiomyopathy", "Myocarditis", "Pericarditis", "Endocarditis",
    "Raynaud Phenomenon", "Varicose Veins", "Peripheral Artery Disease",
]

DISEASE_SYNONYMS = {
    "Asthma": ["bronchial asthma"],
    "Breast Carcinoma": ["breast cancer", "carcinoma of breast"],
    "Alzheimer Disease": ["alzheimers", "alzheimers disease"],
    "Type 2 Diabetes Mellitus": ["type 2 diabetes", "adult onset diabetes"],
    "Parkinson Disease": ["parkinsons", "parkinsons disease"],
    "Rheumatoid Arthritis": [],
    "Schizophrenia": [],
    "Colorectal Carcinoma": ["colorectal cancer", "bowel cancer"],
    "Cystic Fibrosis": ["mucoviscidosis"],
    "Lung Carcinoma": ["lung cancer", "carcinoma of lung"],
    "Melanoma": ["malignant melanoma"],
    "Crohn Disease": ["crohns", "crohns disease"],
    "Hypertension": ["high blood pressure"],
    "Myocardial Infarction": ["heart attack"],
    "Influenza": ["flu"],
    "Stroke": ["cerebrovascular accident"],
    "Osteoarthritis": ["degenerative joint disease"],
    "Systemic Lupus Erythematosus": ["lupus"],
    "Gastroesophageal Reflux Disease": ["acid reflux", "gerd"],
    "Amyotrophic Lateral Sclerosis": ["lou gehrig disease"],
    "Attention Deficit Hyperactivity Disorder": ["adhd"],
    "Obsessive-Compulsive Disorder": ["ocd"],
    "Chronic Obstructive Pulmonary Disease": ["copd"],
}


def iri(value: str) -> str:
    return f"<{value}>"


def disease_iri(cui: str) -> str:
    return f"http://linkedlifedata.com/resource/umls/id/{cui}"


def gene_iri(ncbi: int) -> str:
    return f"http://identifiers.org/ncbigene/{ncbi}"


def symbol_iri(symbol: str) -> str:
    return f"http://identifiers.org/hgnc.symbol/{symbol}"


def class_iri(name: str) -> str:
    return "http://example.org/kgvb/protein-class/" + name.replace(" ", "-")


def triple(s: str, p: str, o: str) -> str:
    return f"{iri(s)} {iri(p)} {o} ."


def lit(value: str) -> str:
    escaped = value.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def build_graph() -> list[str]:
    lines: list[str] = ["# synthetic desk-scale slice shaped like DisGeNET RDF"]
    by_title = {t: (t, cui, doid) for t, cui, doid in DISEASES}
    by_symbol = {s: (s, n, c) for s, n, c in GENES}

    lines.append("")
    lines.append("# diseases")
    for title, cui, doid in DISEASES:
        d = disease_iri(cui)
        lines.append(triple(d, NS["rdf_type"], iri(NS["disease_cls"])))
        lines.append(triple(d, NS["title"], lit(title)))
        lines.append(triple(d, NS["identifier"], lit(doid)))
        lines.append(triple(d, NS["identifier"], lit(f"umls:{cui}")))

    lines.append("")
    lines.append("# genes and their symbol nodes")
    for symbol, ncbi, _cls in GENES:
        g = gene_iri(ncbi)
        s = symbol_iri(symbol)
        lines.append(triple(g, NS["rdf_type"], iri(NS["gene_cls"])))
        lines.append(triple(g, NS["represented_by"], iri(s)))
        lines.append(triple(s, NS["title"], lit(symbol)))

    lines.append("")
    lines.append("# protein class annotations (synthetic vocabulary)")
    for cls in PROTEIN_CLASSES:
        lines.append(triple(class_iri(cls), NS["title"], lit(cls)))
    for symbol, ncbi, cls in GENES:
        if cls:
            lines.append(triple(gene_iri(ncbi), NS["protein_class"], iri(class_iri(cls))))

    lines.append("")
    lines.append("# gene-disease association records")
    pmid = 30000000
    for n, (symbol, disease_title, kind, paper_count, score) in enumerate(ASSOCIATIONS, start=1):
        gda = f"http://rdf.disgenet.org/resource/gda/DGN{n:04d}"
        _, ncbi, _ = by_symbol[symbol]
        _, cui, _ = by_title[disease_title]
        cls = NS["therapeutic"] if kind == "T" else NS["biomarker"]
        lines.append(triple(gda, NS["rdf_type"], iri(cls)))
        lines.append(triple(gda, NS["refers_to"], iri(gene_iri(ncbi))))
        lines.append(triple(gda, NS["refers_to"], iri(disease_iri(cui))))
        role = "a therapeutic target" if kind == "T" else "a biomarker"
        sentence = (
            f"{symbol} was reported as {role} in patients with {disease_title} "
            f"across {paper_count} independent studies."
        )
        lines.append(triple(gda, NS["description"], lit(sentence)))
        lines.append(
            f'{iri(gda)} {iri(NS["has_value"])} "{score:.2f}"^^{iri(NS["xsd_double"])} .'
        )
        for _ in range(paper_count):
            pmid += 1
            lines.append(triple(gda, NS["has_evidence"], iri(f"http://identifiers.org/pubmed/{pmid}")))
    return lines


def build_gazetteer() -> dict:
    values = []
    seen = set()
    for title, cui, _doid in DISEASES:
        values.append(
            {"id": f"umls:{cui}", "value": title, "synonyms": DISEASE_SYNONYMS.get(title, [])}
        )
        seen.add(title.lower())
    next_cui = 9000001
    for title in EXTRA_DISEASES:
        if title.lower() in seen:
            raise SystemExit(f"duplicate gazetteer disease: {title}")
        seen.add(title.lower())
        values.append(
            {
                "id": f"umls:C{next_cui}",
                "value": title,
                "synonyms": DISEASE_SYNONYMS.get(title, []),
            }
        )
        next_cui += 1
    return {"name": "disease", "values": values}


def main() -> None:
    graph_lines = build_graph()
    nt_path = ROOT / "fixtures" / "disgenet-mini.nt"
    nt_path.parent.mkdir(parents=True, exist_ok=True)
    nt_path.write_text("\n".join(graph_lines) + "\n", encoding="utf-8")

    gaz = build_gazetteer()
    gaz_path = ROOT / "models" / "slots" / "diseases.json"
    gaz_path.parent.mkdir(parents=True, exist_ok=True)
    gaz_path.write_text(json.dumps(gaz, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")

    triples = [l for l in graph_lines if l and not l.startswith("#")]
    print(f"wrote {nt_path} ({len(triples)} triple lines)")
    print(f"wrote {gaz_path} ({len(gaz['values'])} disease entries)")


if __name__ == "__main__":
    main()

import gzip

import pytest

import disambig as d

XML = """<?xml version="1.0" encoding="ISO-8859-1"?>
<dblp>
<article key="p1"><author>Daniel Schall 0001</author><author>Schahram Dustdar</author><title>A</title><journal>J</journal><year>2010</year></article>
<article key="p2"><author>Schahram Dustdar</author><author>Daniel Schall 0001</author><author>Florian Skopik</author><title>B</title><journal>J</journal><year>2011</year></article>
<article key="p3"><author>Eric Dubois 0001</author><author>Nicolas Mayer</author><title>C</title><journal>J</journal><year>2012</year></article>
<article key="c1"><author>Nicolas Mayer</author><author>Andr&eacute; Rifaut</author><title>D</title><journal>J</journal><year>2012</year></article>
<article key="p4"><author>Andr&eacute; Rifaut</author><author>Eric Dubois 0002</author><title>E</title><journal>J</journal><year>2013</year></article>
</dblp>
"""


@pytest.fixture
def corpus():
    records = d.parse_dblp(XML)
    gold = d.build_gold_standard(records)
    return records, gold, d.build_blocks(gold), d.CoauthorGraph.build(records)


def test_ingest(tmp_path, corpus):
    records, gold, blocks, _ = corpus
    assert [r.record_id for r in records] == ["p1", "p2", "p3", "c1", "p4"]
    assert records[3].mentions[1].surface_name == "André Rifaut"
    assert records[0].mentions[0].gold_id == "0001"
    assert gold.author_count == 3
    assert len(blocks) == 2

    path = tmp_path / "dump.xml.gz"
    path.write_bytes(gzip.compress(XML.encode("latin-1")))
    assert d.read_dblp(str(path)) == records

    out = tmp_path / "records.jsonl"
    d.write_records(str(out), records)
    assert d.read_records(str(out)) == records
    assert d.GoldStandard.from_json(gold.to_json()) == gold


def test_bad_input():
    with pytest.raises(d.ParseError):
        d.parse_dblp("<dblp><article key='x'><author>A</article></dblp>")
    with pytest.raises(d.MalformedMention):
        d.parse_mention("Wei Li 0001 0002")


def test_distances_and_clustering(corpus):
    _, _, blocks, graph = corpus
    assert graph.distance("p1", "p2", 3, "Daniel Schall") == 1
    assert graph.distance("p3", "p4", 3, "Eric Dubois") == 3
    assert graph.distance("p1", "p3", 3) is None
    with pytest.raises(d.UnknownIdError):
        graph.distance("p1", "nope")

    by_key = {b.block_key: b for b in blocks.blocks}
    dubois = by_key["Eric Dubois"]
    assert d.cluster_block(dubois, graph, 1).cluster_count == 2
    merged = d.cluster_block(dubois, graph, 3)
    assert merged.cluster_count == 1
    s = d.block_scores(merged, dubois)
    assert s.precision == 0.5 and s.recall == 1.0
    assert d.block_scores(d.Clustering.gold(dubois), dubois) == d.BcubedScores(1, 1, 1)


def test_louvain():
    edges = [(i, j, 1.0) for i in range(4) for j in range(i + 1, 4)]
    edges += [(i, j, 1.0) for i in range(4, 8) for j in range(i + 1, 8)]
    edges.append((3, 4, 1.0))
    labels = d.louvain(8, edges)
    assert labels == [0, 0, 0, 0, 1, 1, 1, 1]
    assert d.modularity(8, edges, labels) > d.modularity(8, edges, list(range(8)))
    with pytest.raises(d.UndefinedModularity):
        d.modularity(2, [], [0, 1])


def test_pipeline():
    records, gold = d.generate_synthetic(blocks=6, bridge_rate=0.3, topics_max=2, seed=4)
    graph = d.CoauthorGraph.build(records)
    blocks = d.build_blocks(gold)
    report = d.run_experiment(graph, blocks, all_blocks=True, thresholds=[1, 3], workers=2)
    assert report["blocks"] == 6
    assert [e["threshold"] for e in report["evaluations"]] == [1, 3]
    assert report["results"][0]["comparisons"] == d.count_comparisons(blocks)
    t1, t3 = (r["corpus"] for r in report["results"])
    assert t1["p"] >= t3["p"] and t1["r"] <= t3["r"]

    names = d.run_common_names(graph, blocks, all_blocks=True, min_block_size=10)
    assert names["status"] == "ok"
    assert names["after"]["p"] > names["before"]["p"]
    assert "After optimization" in d.render_report(__import__("json").dumps(names))

    with pytest.raises(d.ArgumentError):
        d.run_experiment(graph, blocks, thresholds=[2])

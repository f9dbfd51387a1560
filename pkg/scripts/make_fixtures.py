#!/usr/bin/env python3
"""Regenerate the hand-authored fixture corpus under tests/fixtures/.

Each sample below is designed around an explicit verdict table: every
non-neutral entailment verdict the evaluator should see is authored here, and
everything else deliberately defaults to neutral. Sample notes record which
rule each sample exercises and the intended metric values.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

ENT = "entailment"
CON = "contradiction"

_MARKER = re.compile(r"\[\d{1,3}(?:\s*[,，]\s*\d{1,3})*\]|【\d{1,3}(?:\s*[,，]\s*\d{1,3})*】")


def plain(markup: str) -> str:
    return _MARKER.sub("", markup)


def cat(*texts: str) -> str:
    return "\n".join(texts)


def build():
    samples = []
    predictions = {}
    nli = []
    claims = []

    def sample(sid, query, docs, summary, human):
        samples.append(
            {
                "id": sid,
                "query": query,
                "documents": [{"content": d} for d in docs],
                "summary": summary,
                "human_citations": human,
            }
        )

    def predict(sid, summary):
        predictions[sid] = summary

    def v(premise, hypothesis, label):
        nli.append({"premise": premise, "hypothesis": hypothesis, "label": label})

    def split(sentence, parts):
        claims.append({"sentence": sentence, "claims": parts})

    # s01: happy path; multi-claim reference sentence; intro masked out.
    # Designed: citation P=R=1, AIS=ACS=1, claim P=1, claim R=3/4.
    d1 = "西瓜含有大量水分，补水效果好。"
    d2 = "西瓜的热量很低，适合减肥人群。"
    d3 = "西瓜富含维生素C等营养成分。"
    r0, r1, r2 = "西瓜对健康有多种好处。", "西瓜水分充足且热量低。", "西瓜含有维生素C。"
    p0, p1, p2 = "西瓜水分很多。", "西瓜热量低。", "西瓜富含维生素C。"
    ref = "西瓜对健康有多种好处。西瓜水分充足且热量低[1][2]。西瓜含有维生素C[3]。"
    pred = "西瓜水分很多[1]。西瓜热量低[2]。西瓜富含维生素C[3]。"
    sample("s01", "西瓜有什么好处?", [d1, d2, d3], ref, [[], [1, 2], [3]])
    predict("s01", pred)
    c1a, c1b = "西瓜水分充足。", "西瓜热量低。"
    split(r1, [c1a, c1b])
    v(r1, c1a, ENT)
    v(r1, c1b, ENT)
    v(cat(c1a, c1b), r1, ENT)
    v(d1, p0, ENT)
    v(d2, p1, ENT)
    v(d3, p2, ENT)
    v(plain(ref), p0, ENT)
    v(plain(ref), p1, ENT)
    v(plain(ref), p2, ENT)
    v(plain(pred), c1a, ENT)
    v(plain(pred), c1b, ENT)
    v(plain(pred), r2, ENT)
    # reference self-evaluation: intro entailed by the cited rest; partial
    # support of r1 by d1 and d2 through its sub-claims
    v(cat(r1, r2), r0, ENT)
    v(d1, c1a, ENT)
    v(d2, c1b, ENT)
    v(d3, r2, ENT)
    v(cat(d1, d2), c1a, ENT)
    v(cat(d1, d2), c1b, ENT)
    v(plain(ref), r0, ENT)
    v(plain(ref), c1a, ENT)
    v(plain(ref), c1b, ENT)

    # s02: nearest-subsequent citation fallback for an uncited first sentence.
    # Designed: citation P=(0.5+0.5)/2... eff(P0)={2,3} vs C_ref={2} -> 0.5;
    # P1 eff={2,3} vs C_ref={3} -> 0.5; recall 1 for both; AIS 0.5, ACS 1.
    d1 = "太阳是太阳系的中心恒星。"
    d2 = "太阳主要由氢和氦组成。"
    d3 = "太阳的能量来自核聚变反应。"
    r0, r1, r2 = "太阳是太阳系的中心。", "太阳由氢和氦构成。", "它的能量来自核聚变。"
    ref = "太阳是太阳系的中心[1]。太阳由氢和氦构成[2]。它的能量来自核聚变[3]。"
    p0, p1 = "太阳的主要成分是氢和氦。", "这些元素通过核聚变产生能量。"
    pred = "太阳的主要成分是氢和氦。这些元素通过核聚变产生能量[2,3]。"
    sample("s02", "太阳由什么组成?", [d1, d2, d3], ref, [[1], [2], [3]])
    predict("s02", pred)
    v(d2, p0, ENT)
    v(d3, p1, ENT)
    v(cat(d2, d3), p1, ENT)
    v(plain(ref), p0, ENT)
    v(plain(ref), p1, ENT)
    v(plain(pred), r1, ENT)
    v(plain(pred), r2, ENT)
    v(d1, r0, ENT)
    v(d2, r1, ENT)
    v(d3, r2, ENT)

    # s03: zero rules. P1 is unsupported (C_ref empty -> recall 0); P2 is
    # uncited with no subsequent citations (eff empty -> precision 0) yet
    # grounded (AIS 0, ACS 1). Designed: cit P=R=1/3, AIS=1/3, ACS=2/3.
    d1 = "长城始建于春秋战国时期。"
    d2 = "长城总长度超过两万公里。"
    d3 = "长城是世界文化遗产之一。"
    r0, r1, r2 = "长城历史悠久。", "长城总长超过两万公里。", "长城是世界文化遗产。"
    ref = "长城历史悠久[1]。长城总长超过两万公里[2]。长城是世界文化遗产[3]。"
    p0, p1, p2 = "长城始建于战国时期。", "长城每年吸引一亿游客。", "长城被列为世界文化遗产。"
    pred = "长城始建于战国时期[1]。长城每年吸引一亿游客[2]。长城被列为世界文化遗产。"
    sample("s03", "长城有多长的历史?", [d1, d2, d3], ref, [[1], [2], [3]])
    predict("s03", pred)
    v(d1, p0, ENT)
    v(d3, p2, ENT)
    v(plain(ref), p0, ENT)
    v(plain(pred), r0, ENT)
    v(plain(pred), r2, ENT)
    v(d1, r0, ENT)
    v(d2, r1, ENT)
    v(d3, r2, ENT)

    # s04: partial support via sub-claims; attributability needs every
    # sub-claim entailed. Designed: cit P=1, R=0.75; AIS=0.5; ACS=1.
    d1 = "咖啡含有咖啡因，能提神醒脑。"
    d2 = "过量饮用咖啡会导致失眠。"
    d3 = "咖啡因能加速新陈代谢。"
    r0, r1 = "咖啡能提神但过量会失眠。", "咖啡因促进新陈代谢。"
    ref = "咖啡能提神但过量会失眠[1][2]。咖啡因促进新陈代谢[3]。"
    p0, p1 = "咖啡既能提神又会导致失眠。", "咖啡因可以加快新陈代谢。"
    pred = "咖啡既能提神又会导致失眠[1]。咖啡因可以加快新陈代谢[3]。"
    sample("s04", "咖啡对身体有什么影响?", [d1, d2, d3], ref, [[1, 2], [3]])
    predict("s04", pred)
    ca, cb = "咖啡能提神。", "咖啡会导致失眠。"
    cra, crb = "咖啡能提神。", "过量饮咖啡会失眠。"
    split(p0, [ca, cb])
    split(r0, [cra, crb])
    v(p0, ca, ENT)
    v(p0, cb, ENT)
    v(cat(ca, cb), p0, ENT)
    v(r0, cra, ENT)
    v(r0, crb, ENT)
    v(cat(cra, crb), r0, ENT)
    v(d1, ca, ENT)
    v(d2, cb, ENT)
    v(cat(d1, d2), ca, ENT)
    v(cat(d1, d2), cb, ENT)
    v(d3, p1, ENT)
    v(plain(ref), ca, ENT)
    v(plain(ref), cb, ENT)
    v(plain(ref), p1, ENT)
    v(plain(pred), cra, ENT)
    v(plain(pred), crb, ENT)
    v(plain(pred), r1, ENT)
    v(d2, crb, ENT)
    v(d3, r1, ENT)
    v(cat(d1, d2), cra, ENT)
    v(cat(d1, d2), crb, ENT)

    # s05: a contradicting document is excluded from oracle citations even
    # when it entails a sub-claim, and disqualifies attribution.
    # Designed: cit P=R=0.5; AIS=0.5; ACS=0.5; claim P=1/3, R=0.5.
    d1 = "地球是太阳系中第三颗行星，不是第四颗。"
    d2 = "地球是太阳系的第三颗行星。"
    d3 = "火星是太阳系的第四颗行星。"
    r0, r1, r2 = "太阳系行星的排列顺序很明确。", "地球是第三颗行星。", "火星排在第四位。"
    ref = "太阳系行星的排列顺序很明确。地球是第三颗行星[2]。火星排在第四位[3]。"
    p0, p1 = "地球是太阳系第四颗行星。", "火星是第四颗行星。"
    pred = "地球是太阳系第四颗行星[1]。火星是第四颗行星[3]。"
    sample("s05", "地球是第几颗行星?", [d1, d2, d3], ref, [[], [2], [3]])
    predict("s05", pred)
    w1, w2 = "地球在太阳系中。", "地球是第四颗行星。"
    split(p0, [w1, w2])
    v(d1, p0, CON)
    v(d2, p0, CON)
    v(d1, w1, ENT)
    v(d3, p1, ENT)
    v(plain(ref), p1, ENT)
    v(plain(pred), r2, ENT)
    v(cat(r1, r2), r0, ENT)
    v(d1, r1, ENT)
    v(d2, r1, ENT)
    v(d3, r2, ENT)

    # s06: hallucinated citation id (9 of 3) stays in the prediction and can
    # only hurt precision. Designed: cit P=R=0.5; AIS=0.5; ACS=1.
    d1 = "熊猫主要以竹子为食。"
    d2 = "熊猫是中国的国宝动物。"
    d3 = "野生熊猫栖息在四川山区。"
    r0, r1, r2 = "熊猫吃竹子。", "熊猫是中国的国宝。", "熊猫生活在四川。"
    ref = "熊猫吃竹子[1]。熊猫是中国的国宝[2]。熊猫生活在四川[3]。"
    p0, p1 = "熊猫以竹子为主食。", "熊猫栖息在四川的山里。"
    pred = "熊猫以竹子为主食[9]。熊猫栖息在四川的山里[3]。"
    sample("s06", "熊猫吃什么?", [d1, d2, d3], ref, [[1], [2], [3]])
    predict("s06", pred)
    v(d1, p0, ENT)
    v(d3, p1, ENT)
    v(plain(ref), p0, ENT)
    v(plain(ref), p1, ENT)
    v(plain(pred), r0, ENT)
    v(plain(pred), r2, ENT)
    v(d1, r0, ENT)
    v(d2, r1, ENT)
    v(d3, r2, ENT)

    # s07: auto mask drops an uncited concluding sentence entailed by the
    # cited rest. Designed under auto: cit P=R=1 over 2 masked sentences;
    # under default the concluding sentence scores zero, pulling P to 2/3.
    d1 = "跑步可以增强心肺功能。"
    d2 = "跑步有助于控制体重。"
    d3 = "跑步过度可能损伤膝盖。"
    r0, r1 = "跑步能增强心肺并控制体重。", "过度跑步会伤膝盖。"
    ref = "跑步能增强心肺并控制体重[1][2]。过度跑步会伤膝盖[3]。"
    p0, p1, p2 = "跑步增强心肺功能。", "跑步帮助控制体重。", "总之跑步好处很多。"
    pred = "跑步增强心肺功能[1]。跑步帮助控制体重[2]。总之跑步好处很多。"
    sample("s07", "跑步有什么好处?", [d1, d2, d3], ref, [[1, 2], [3]])
    predict("s07", pred)
    fa, fb = "跑步能增强心肺。", "跑步能控制体重。"
    split(r0, [fa, fb])
    v(r0, fa, ENT)
    v(r0, fb, ENT)
    v(cat(fa, fb), r0, ENT)
    v(cat(p0, p1), p2, ENT)
    v(d1, p0, ENT)
    v(d2, p1, ENT)
    v(plain(ref), p0, ENT)
    v(plain(ref), p1, ENT)
    v(plain(pred), fa, ENT)
    v(plain(pred), fb, ENT)
    v(d1, fa, ENT)
    v(d2, fb, ENT)
    v(d3, r1, ENT)
    v(cat(d1, d2), fa, ENT)
    v(cat(d1, d2), fb, ENT)

    # s08: summary with no citations at all; every sentence keeps mask 1.
    # Designed: cit P=R=0; AIS=0; ACS=1 (grounded but uncited).
    d1 = "绿茶含有茶多酚。"
    d2 = "绿茶有抗氧化作用。"
    r0, r1, r2 = "绿茶是一种健康饮品。", "绿茶富含茶多酚。", "绿茶能抗氧化。"
    ref = "绿茶是一种健康饮品。绿茶富含茶多酚[1]。绿茶能抗氧化[2]。"
    p0, p1 = "绿茶里有茶多酚。", "绿茶可以抗氧化。"
    pred = "绿茶里有茶多酚。绿茶可以抗氧化。"
    sample("s08", "绿茶有什么功效?", [d1, d2], ref, [[], [1], [2]])
    predict("s08", pred)
    v(d1, p0, ENT)
    v(d2, p1, ENT)
    v(plain(ref), p0, ENT)
    v(plain(ref), p1, ENT)
    v(plain(pred), r1, ENT)
    v(plain(pred), r2, ENT)
    v(cat(r1, r2), r0, ENT)
    v(d1, r1, ENT)
    v(d2, r2, ENT)

    # s09: redundant sub-claims; keep-first dedupe removes the two restated
    # claims. Designed: redundancy 0.5, n_splits 2, correctness 0.75,
    # completeness 1 for the first reference sentence.
    d1 = "维生素D有助于钙的吸收。"
    d2 = "晒太阳可以促进维生素D合成。"
    r0 = "维生素D帮助吸收钙，而且晒太阳能促进它的合成。"
    r1 = "补充维生素D很重要。"
    ref = "维生素D帮助吸收钙，而且晒太阳能促进它的合成[1][2]。补充维生素D很重要。"
    p0, p1 = "维生素D促进钙吸收。", "晒太阳有助于合成维生素D。"
    pred = "维生素D促进钙吸收[1]。晒太阳有助于合成维生素D[2]。"
    sample("s09", "维生素D有什么作用?", [d1, d2], ref, [[1, 2], []])
    predict("s09", pred)
    ka = "维生素D帮助钙吸收。"
    kb = "晒太阳促进维生素D合成。"
    ka2 = "维生素D有助于钙的吸收过程。"
    kb2 = "日晒促进维生素D的合成。"
    split(r0, [ka, kb, ka2, kb2])
    v(ka, ka2, ENT)
    v(ka2, ka, ENT)
    v(kb, kb2, ENT)
    v(kb2, kb, ENT)
    v(r0, ka, ENT)
    v(r0, kb, ENT)
    v(r0, ka2, ENT)
    v(cat(ka, kb, ka2, kb2), r0, ENT)
    v(d1, p0, ENT)
    v(d2, p1, ENT)
    v(plain(ref), p0, ENT)
    v(plain(ref), p1, ENT)
    v(plain(pred), ka, ENT)
    v(plain(pred), kb, ENT)
    v(plain(pred), ka2, ENT)
    v(plain(pred), kb2, ENT)
    v(d1, ka, ENT)
    v(d2, kb, ENT)
    v(r0, r1, ENT)
    v(cat(d1, d2), ka, ENT)
    v(cat(d1, d2), kb, ENT)
    v(cat(d1, d2), ka2, ENT)
    v(cat(d1, d2), kb2, ENT)

    # s10: two identical prediction sentences; self-BLEU exactly 100. The
    # uncited reference intro is NOT entailed by the rest and keeps mask 1.
    d1 = "月球绕地球公转一周约需27天。"
    r0, r1 = "月球是地球唯一的天然卫星。", "月球绕地球一圈约27天。"
    ref = "月球是地球唯一的天然卫星。月球绕地球一圈约27天[1]。"
    pp = "月球公转周期约为27天。"
    pred = "月球公转周期约为27天[1]。月球公转周期约为27天[1]。"
    sample("s10", "月球绕地球一圈要多久?", [d1], ref, [[], [1]])
    predict("s10", pred)
    v(d1, pp, ENT)
    v(plain(ref), pp, ENT)
    v(plain(pred), r1, ENT)
    v(d1, r1, ENT)

    # s11: fully disjoint prediction sentences; self-BLEU under the floor.
    d1 = "春天桃花盛开。"
    d2 = "秋天枫叶变红。"
    r0, r1, r2 = "四季景色各不相同。", "春天桃花会开。", "秋天枫叶转红。"
    ref = "四季景色各不相同。春天桃花会开[1]。秋天枫叶转红[2]。"
    p0, p1 = "桃花盛开于春！", "枫叶转红在秋？"
    pred = "桃花盛开于春[1]！枫叶转红在秋[2]？"
    sample("s11", "四季有什么景色?", [d1, d2], ref, [[], [1], [2]])
    predict("s11", pred)
    v(d1, p0, ENT)
    v(d2, p1, ENT)
    v(plain(ref), p0, ENT)
    v(plain(ref), p1, ENT)
    v(plain(pred), r1, ENT)
    v(plain(pred), r2, ENT)
    v(cat(r1, r2), r0, ENT)
    v(d1, r1, ENT)
    v(d2, r2, ENT)

    # s12: designed mask disagreement: the last reference sentence is uncited
    # and not entailed by the rest, so auto gives mask 1 while the human
    # annotation leaves it citation-free (mask 0).
    d1 = "骆驼的驼峰储存脂肪。"
    d2 = "骆驼能长时间不喝水。"
    d3 = "骆驼被称为沙漠之舟。"
    r0 = "骆驼适应沙漠环境。"
    r1, r2, r3 = "驼峰里储存着脂肪。", "骆驼可以很久不饮水。", "骆驼有双层睫毛。"
    ref = "骆驼适应沙漠环境。驼峰里储存着脂肪[1]。骆驼可以很久不饮水[2]。骆驼有双层睫毛。"
    p0, p1 = "驼峰中储存的是脂肪。", "骆驼长时间不喝水也能生存。"
    pred = "驼峰中储存的是脂肪[1]。骆驼长时间不喝水也能生存[2]。"
    sample("s12", "骆驼如何适应沙漠?", [d1, d2, d3], ref, [[], [1], [2], []])
    predict("s12", pred)
    # incomplete split: the lone sub-claim weakens r2 and fails to cover it
    weak = "骆驼不常喝水。"
    split(r2, [weak])
    v(r2, weak, ENT)
    v(plain(pred), weak, ENT)
    v(d1, p0, ENT)
    v(d2, p1, ENT)
    v(plain(ref), p0, ENT)
    v(plain(ref), p1, ENT)
    v(plain(pred), r1, ENT)
    v(plain(pred), r2, ENT)
    v(cat(r1, r2), r0, ENT)
    v(d1, r1, ENT)
    v(d2, r2, ENT)

    # s13: five documents, multi-citation sentences, and designed evaluator vs
    # human disagreements: the evaluator additionally credits d4 and d5.
    d1 = "成年人每天应喝约两升水。"
    d2 = "充足饮水有益身体健康。"
    d3 = "每天喝两升左右的水比较合适。"
    d4 = "医生建议成年人日饮水量约两升。"
    d5 = "保持每天两升的饮水量对健康有好处。"
    r0 = "喝水对健康非常重要。"
    r1, r2 = "成年人每天应饮用约两升水。", "饮水不足会影响健康。"
    r3 = "坚持足量饮水是个好习惯。"
    ref = "喝水对健康非常重要。成年人每天应饮用约两升水[1,3]。饮水不足会影响健康[2]。坚持足量饮水是个好习惯。"
    p0, p1 = "每天大约喝两升水最合适。", "喝水太少对身体不好。"
    pred = "每天大约喝两升水最合适[1][3][4]。喝水太少对身体不好[2][5]。"
    sample("s13", "每天应该喝多少水?", [d1, d2, d3, d4, d5], ref, [[], [1, 3], [2], []])
    predict("s13", pred)
    v(d1, p0, ENT)
    v(d3, p0, ENT)
    v(d4, p0, ENT)
    v(d2, p1, ENT)
    v(d5, p1, ENT)
    v(cat(d1, d3, d4), p0, ENT)
    v(cat(d2, d5), p1, ENT)
    v(plain(ref), p0, ENT)
    v(plain(ref), p1, ENT)
    v(plain(pred), r1, ENT)
    v(plain(pred), r2, ENT)
    v(cat(r1, r2), r0, ENT)
    v(cat(r1, r2), r3, ENT)
    v(d1, r1, ENT)
    v(d3, r1, ENT)
    v(d4, r1, ENT)
    v(d2, r2, ENT)
    v(d5, r2, ENT)
    v(cat(d1, d3), r1, ENT)
    v(cat(d2,), r2, ENT)
    v(cat(d1, d3, d4), r1, ENT)
    v(cat(d2, d5), r2, ENT)

    # s14: one hallucinated prediction sentence with an empty oracle set.
    # Designed: cit P=R=0.75, AIS=0.75, ACS=0.75.
    d1 = "企鹅主要生活在南半球。"
    d2 = "企鹅不会飞但擅长游泳。"
    d3 = "帝企鹅是体型最大的企鹅。"
    r0 = "企鹅是一类不会飞的鸟。"
    r1, r2, r3 = "企鹅分布在南半球。", "企鹅擅长游泳。", "帝企鹅体型最大。"
    ref = "企鹅是一类不会飞的鸟。企鹅分布在南半球[1]。企鹅擅长游泳[2]。帝企鹅体型最大[3]。"
    p0, p1, p2, p3 = (
        "企鹅生活在南半球。",
        "企鹅很会游泳。",
        "帝企鹅是最大的企鹅。",
        "企鹅以磷虾为主要食物。",
    )
    pred = "企鹅生活在南半球[1]。企鹅很会游泳[2]。帝企鹅是最大的企鹅[3]。企鹅以磷虾为主要食物[1]。"
    sample("s14", "企鹅有什么特点?", [d1, d2, d3], ref, [[], [1], [2], [3]])
    predict("s14", pred)
    v(d1, p0, ENT)
    v(d2, p1, ENT)
    v(d3, p2, ENT)
    v(plain(ref), p0, ENT)
    v(plain(ref), p1, ENT)
    v(plain(ref), p2, ENT)
    v(plain(pred), r1, ENT)
    v(plain(pred), r2, ENT)
    v(plain(pred), r3, ENT)
    v(cat(r1, r2, r3), r0, ENT)
    v(d1, r1, ENT)
    v(d2, r2, ENT)
    v(d2, r0, ENT)
    v(d3, r3, ENT)

    return samples, predictions, {"nli": nli, "claims": claims}


def check(oracle):
    # Verdict-table strings compare against marker-stripped text; a marker
    # inside an entry means a sentence variable leaked its markup.
    for entry in oracle["nli"]:
        for key in ("premise", "hypothesis"):
            assert not _MARKER.search(entry[key]), f"marker in nli {key}: {entry[key]!r}"
    for entry in oracle["claims"]:
        assert not _MARKER.search(entry["sentence"]), f"marker in claim key: {entry['sentence']!r}"
        for claim in entry["claims"]:
            assert not _MARKER.search(claim), f"marker in claim: {claim!r}"


def main():
    FIXTURES.mkdir(parents=True, exist_ok=True)
    samples, predictions, oracle = build()
    check(oracle)

    with open(FIXTURES / "corpus.jsonl", "w", encoding="utf-8") as fh:
        for record in samples:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
    with open(FIXTURES / "predictions.jsonl", "w", encoding="utf-8") as fh:
        for sid, summary in predictions.items():
            fh.write(json.dumps({"sample_id": sid, "summary": summary}, ensure_ascii=False) + "\n")
    with open(FIXTURES / "oracle.json", "w", encoding="utf-8") as fh:
        json.dump(oracle, fh, ensure_ascii=False, indent=1)

    ref_sentences = sum(len(s["human_citations"]) for s in samples)
    print(f"samples={len(samples)} reference_sentences={ref_sentences} "
          f"nli_entries={len(oracle['nli'])} claim_entries={len(oracle['claims'])}")


if __name__ == "__main__":
    main()

"""Coefficient tables for the central-similarity arc probability under the
segregation and association alternatives: the tau < 1 cells, plus the
tau >= 1 small-epsilon segregation cell keyed "A2".

Each cell is (scale, numerator, denominator_factors).  Terms are
(i, j, a, b) meaning (a + b*sqrt(3)) * tau**i * eps**j; denominator factors
are (terms, power).  The tables were generated symbolically, so do not
edit them by hand.
"""

import math

import numpy as np

_SQ3 = math.sqrt(3.0)

SEGREGATION = {
    "11": (
        1,
        ((2, 0, 3, 0), (2, 4, -36, 0), (3, 0, -3, 0), (3, 4, 20, 0)),
        ((((0, 0, 1, 0), (0, 1, 2, 0)), 2), (((0, 0, -1, 0), (0, 1, 2, 0)), 2), (((0, 0, 18, 0), (1, 0, -18, 0)), 1)),
    ),
    "12": (
        -1/18,
        ((1, 0, -16, 0), (1, 1, 0, 64), (1, 2, -288, 0), (1, 3, 0, 192), (1, 4, -144, 0), (2, 0, 45, 0), (2, 1, 0, -128), (2, 2, 288, 0), (2, 4, -108, 0), (3, 0, -60, 0), (3, 1, 0, 64), (3, 4, 16, 0), (4, 0, 4, 0), (4, 4, 80, 0)),
        ((((0, 0, 1, 0), (0, 1, 2, 0)), 2), (((0, 0, 1, 0), (1, 0, 2, 0)), 2), (((0, 0, -1, 0), (0, 1, 2, 0)), 2)),
    ),
    "23": (
        1/18,
        ((1, 0, -128, 0), (1, 1, 0, 512), (1, 2, -2304, 0), (1, 3, 0, 1536), (1, 4, -1152, 0), (2, 0, -77, 0), (2, 1, 0, 640), (2, 2, -4320, 0), (2, 3, 0, 3840), (2, 4, -3636, 0), (3, 0, 150, 0), (3, 1, 0, -320), (3, 2, -576, 0), (3, 3, 0, 2304), (3, 4, -3688, 0), (4, 0, -124, 0), (4, 1, 0, 128), (4, 3, 0, 512), (4, 4, -1584, 0), (5, 0, 8, 0), (5, 4, -96, 0)),
        ((((0, 0, 1, 0), (0, 1, 2, 0)), 2), (((0, 0, 1, 0), (1, 0, 2, 0)), 2), (((0, 0, -1, 0), (0, 1, 2, 0)), 2), (((0, 0, 1, 0), (1, 0, -2, 0)), 1)),
    ),
    "31": (
        1/32,
        ((2, 0, -84, 0), (2, 1, 0, 432), (2, 2, -2592, 0), (2, 3, 0, 2304), (2, 4, -2268, 0), (3, 0, 192, 0), (3, 1, 0, -960), (3, 2, 5760, 0), (3, 3, 0, -5120), (3, 4, 4992, 0), (4, 0, -141, 0), (4, 1, 0, 672), (4, 2, -4032, 0), (4, 3, 0, 3584), (4, 4, -3452, 0), (5, 0, 42, 0), (5, 1, 0, -192), (5, 2, 1152, 0), (5, 3, 0, -1024), (5, 4, 984, 0)),
        ((((0, 0, -1, 0), (1, 0, 1, 0)), 2), (((0, 0, 0, -1), (0, 1, 3, 0)), 4), (((0, 0, -1, 0), (1, 0, 2, 0)), 1)),
    ),
    "32": (
        1/32,
        ((1, 0, -16, 0), (1, 1, 0, 64), (1, 2, -288, 0), (1, 3, 0, 192), (1, 4, -144, 0), (2, 0, 28, 0), (2, 1, 0, 48), (2, 2, -1152, 0), (2, 3, 0, 1536), (2, 4, -1836, 0), (3, 0, -464, 0), (3, 1, 0, 1664), (3, 2, -7200, 0), (3, 3, 0, 5056), (3, 4, -4368, 0), (4, 0, 771, 0), (4, 1, 0, -2464), (4, 2, 10656, 0), (4, 3, 0, -8064), (4, 4, 7444, 0), (5, 0, -154, 0), (5, 1, 0, -768), (5, 2, 7488, 0), (5, 3, 0, -7168), (5, 4, 7144, 0), (6, 0, -220, 0), (6, 1, 0, 1792), (6, 2, -11520, 0), (6, 3, 0, 10240), (6, 4, -9872, 0), (7, 0, 136, 0), (7, 1, 0, -768), (7, 2, 4608, 0), (7, 3, 0, -4096), (7, 4, 3936, 0)),
        ((((0, 0, 1, 0), (1, 0, 2, 0)), 2), (((0, 0, -1, 0), (1, 0, 1, 0)), 2), (((0, 0, 0, -1), (0, 1, 3, 0)), 4), (((0, 0, -1, 0), (1, 0, 2, 0)), 1)),
    ),
    "33": (
        1/32,
        ((1, 0, -128, 0), (1, 1, 0, 512), (1, 2, -2304, 0), (1, 3, 0, 1536), (1, 4, -1152, 0), (2, 0, 4, 0), (2, 1, 0, 208), (2, 2, -1728, 0), (2, 3, 0, 1536), (2, 4, -1332, 0), (3, 0, 328, 0), (3, 1, 0, -1440), (3, 2, 6912, 0), (3, 3, 0, -4864), (3, 4, 3864, 0), (4, 0, -115, 0), (4, 1, 0, -32), (4, 2, 2016, 0), (4, 3, 0, -2304), (4, 4, 2204, 0), (5, 0, -76, 0), (5, 1, 0, 704), (5, 2, -4608, 0), (5, 3, 0, 3840), (5, 4, -3376, 0), (6, 0, 68, 0), (6, 1, 0, -384), (6, 2, 2304, 0), (6, 3, 0, -2048), (6, 4, 2096, 0)),
        ((((0, 0, 1, 0), (1, 0, 2, 0)), 2), (((0, 0, -1, 0), (1, 0, 1, 0)), 2), (((0, 0, 0, 1), (0, 1, -3, 0)), 4)),
    ),
    "34": (
        1/32,
        ((1, 0, -200, 0), (1, 1, 0, 800), (1, 2, -3600, 0), (1, 3, 0, 2400), (1, 4, -1800, 0), (2, 0, -412, 0), (2, 1, 0, 1968), (2, 2, -10080, 0), (2, 3, 0, 7392), (2, 4, -5940, 0), (3, 0, 44, 0), (3, 1, 0, 304), (3, 2, -3600, 0), (3, 3, 0, 3872), (3, 4, -3948, 0), (4, 0, 213, 0), (4, 1, 0, -1088), (4, 2, 4896, 0), (4, 3, 0, -2528), (4, 4, 788, 0), (5, 0, -191, 0), (5, 1, 0, 672), (5, 2, -3168, 0), (5, 3, 0, 2816), (5, 4, -3292, 0), (6, 0, -8, 0), (6, 1, 0, 320), (6, 2, -2304, 0), (6, 3, 0, 1920), (6, 4, -1696, 0), (7, 0, 68, 0), (7, 1, 0, -384), (7, 2, 2304, 0), (7, 3, 0, -2048), (7, 4, 2064, 0)),
        ((((0, 0, 1, 0), (1, 0, 2, 0)), 2), (((0, 0, -1, 0), (1, 0, 1, 0)), 2), (((0, 0, 0, 1), (0, 1, -3, 0)), 4), (((0, 0, 1, 0), (1, 0, 1, 0)), 1)),
    ),
    "35": (
        1/16,
        ((1, 0, -72, 0), (1, 1, 0, 288), (1, 2, -1296, 0), (1, 3, 0, 864), (1, 4, -648, 0), (2, 0, -144, 0), (2, 1, 0, 768), (2, 2, -4104, 0), (2, 3, 0, 3024), (2, 4, -2376, 0), (3, 0, 54, 0), (3, 1, 0, 264), (3, 2, -2736, 0), (3, 3, 0, 2384), (3, 4, -1806, 0), (4, 0, 207, 0), (4, 1, 0, -624), (4, 2, 2448, 0), (4, 3, 0, -1920), (4, 4, 2186, 0), (5, 0, 108, 0), (5, 1, 0, -576), (5, 2, 3456, 0), (5, 3, 0, -3136), (5, 4, 3280, 0), (6, 0, 36, 0), (6, 1, 0, -192), (6, 2, 1152, 0), (6, 3, 0, -1024), (6, 4, 1032, 0)),
        ((((0, 0, 1, 0), (1, 0, 2, 0)), 2), (((0, 0, 0, -1), (0, 1, 3, 0)), 4), (((0, 0, 1, 0), (1, 0, 1, 0)), 1), (((0, 0, 2, 0), (1, 0, 1, 0)), 1)),
    ),
    "46": (
        1,
        ((0, 0, -144, 0), (0, 1, 0, 576), (0, 2, -2592, 0), (0, 3, 0, 1728), (0, 4, -1296, 0), (1, 0, -288, 0), (1, 1, 0, 1344), (1, 2, -6912, 0), (1, 3, 0, 5184), (1, 4, -4320, 0), (2, 0, -216, 0), (2, 1, 0, 1152), (2, 2, -6552, 0), (2, 3, 0, 5328), (2, 4, -4752, 0), (3, 0, -90, 0), (3, 1, 0, 456), (3, 2, -2592, 0), (3, 3, 0, 2160), (3, 4, -1998, 0), (4, 0, -9, 0), (4, 1, 0, 48), (4, 2, -288, 0), (4, 3, 0, 256), (4, 4, -254, 0)),
        ((((0, 0, 0, 1), (0, 1, -3, 0)), 4), (((0, 0, 1, 0), (1, 0, 1, 0)), 1), (((0, 0, 32, 0), (1, 0, 16, 0)), 1)),
    ),
    "47": (
        1/16,
        ((0, 0, -144, 0), (0, 1, 0, 576), (0, 2, -2592, 0), (0, 3, 0, 1728), (0, 4, -1296, 0), (1, 0, -144, 0), (1, 1, 0, 672), (1, 2, -3456, 0), (1, 3, 0, 2592), (1, 4, -2160, 0), (2, 0, -72, 0), (2, 1, 0, 432), (2, 2, -2664, 0), (2, 3, 0, 2304), (2, 4, -2160, 0), (3, 0, -72, 0), (3, 1, 0, 360), (3, 2, -2016, 0), (3, 3, 0, 1664), (3, 4, -1536, 0), (4, 0, -9, 0), (4, 1, 0, 48), (4, 2, -288, 0), (4, 3, 0, 256), (4, 4, -256, 0)),
        ((((1, 0, 1, 0),), 1), (((0, 0, 0, 1), (0, 1, -3, 0)), 4), (((0, 0, 1, 0), (1, 0, 1, 0)), 1)),
    ),
    "48": (1, ((0, 0, 1, 0),), ()),
    "A2": (
        1/18,
        ((1, 0, -9, 0), (1, 2, 144, 0), (1, 3, 0, -192), (1, 4, 240, 0), (2, 0, 18, 0), (2, 2, 144, 0), (2, 3, 0, -384), (2, 4, 512, 0), (3, 0, 63, 0), (3, 2, -144, 0), (3, 3, 0, -192), (3, 4, 140, 0), (4, 0, 36, 0), (4, 2, -144, 0), (4, 4, -176, 0), (5, 4, -84, 0), (6, 4, -8, 0)),
        ((((0, 0, 1, 0), (1, 0, 1, 0)), 2), (((0, 0, -1, 0), (0, 2, 4, 0)), 2), (((0, 0, 1, 0), (1, 0, 2, 0)), 1), (((0, 0, 2, 0), (1, 0, 1, 0)), 1)),
    ),
}

ASSOCIATION = {
    "11": (
        1,
        ((2, 0, -108, 0), (2, 2, 7776, 0), (2, 3, 0, -25920), (2, 4, 81648, 0), (3, 0, 108, 0), (3, 1, 0, 768), (3, 2, -25056, 0), (3, 3, 0, 74304), (3, 4, -228528, 0), (4, 0, 445, 0), (4, 1, 0, -208), (4, 2, -27360, 0), (4, 3, 0, 93696), (4, 4, -296640, 0), (5, 0, -726, 0), (5, 1, 0, 1056), (5, 2, 28512, 0), (5, 3, 0, -107712), (5, 4, 346896, 0), (6, 0, 63, 0), (6, 1, 0, -1200), (6, 2, 22464, 0), (6, 3, 0, -60480), (6, 4, 181872, 0), (7, 0, 128, 0), (7, 1, 0, 256), (7, 2, -14976, 0), (7, 3, 0, 46848), (7, 4, -145728, 0), (8, 0, 36, 0), (8, 1, 0, 192), (8, 2, -6912, 0), (8, 3, 0, 20736), (8, 4, -63936, 0)),
        ((((0, 0, -1, 0), (1, 0, 1, 0)), 2), (((0, 0, 2, 0), (1, 0, 1, 0)), 2), (((0, 0, 0, 1), (0, 1, -6, 0)), 2), (((0, 0, 0, 1), (0, 1, 6, 0)), 2), (((0, 0, -1, 0), (1, 0, 2, 0)), 1), (((0, 0, 18, 0), (1, 0, 36, 0)), 1)),
    ),
    "12": (
        1/18,
        ((1, 4, -46656, 0), (2, 0, 108, 0), (2, 2, -7776, 0), (2, 3, 0, 67392), (2, 4, -252720, 0), (3, 0, 324, 0), (3, 1, 0, -768), (3, 2, -47520, 0), (3, 3, 0, 153792), (3, 4, -405216, 0), (4, 0, -13, 0), (4, 1, 0, 3280), (4, 2, -31392, 0), (4, 3, 0, 6528), (4, 4, 82368, 0), (5, 0, -1214, 0), (5, 1, 0, 3872), (5, 2, 31392, 0), (5, 3, 0, -151104), (5, 4, 476640, 0), (6, 0, -15, 0), (6, 1, 0, -1872), (6, 2, 22464, 0), (6, 3, 0, -28224), (6, 4, 34992, 0), (7, 0, 484, 0), (7, 1, 0, -1600), (7, 2, -9216, 0), (7, 3, 0, 56832), (7, 4, -199872, 0), (8, 0, 164, 0), (8, 1, 0, -320), (8, 2, -4608, 0), (8, 3, 0, 19200), (8, 4, -62784, 0)),
        ((((0, 0, 1, 0), (1, 0, 2, 0)), 2), (((0, 0, -1, 0), (1, 0, 1, 0)), 2), (((0, 0, 2, 0), (1, 0, 1, 0)), 2), (((0, 0, 0, 1), (0, 1, -6, 0)), 2), (((0, 0, 0, 1), (0, 1, 6, 0)), 2)),
    ),
    "13": (
        1/18,
        ((1, 4, 11664, 0), (2, 0, 54, 0), (2, 2, -3888, 0), (2, 3, 0, 10368), (2, 4, 7776, 0), (3, 0, 135, 0), (3, 1, 0, -384), (3, 2, -4320, 0), (3, 3, 0, 1728), (3, 4, 3456, 0), (4, 0, -74, 0), (4, 1, 0, -112), (4, 2, 21456, 0), (4, 3, 0, -67584), (4, 4, 179424, 0), (5, 0, -327, 0), (5, 1, 0, 48), (5, 2, 22464, 0), (5, 3, 0, -65088), (5, 4, 183600, 0), (6, 0, 156, 0), (6, 1, 0, -960), (6, 3, 0, 18432), (6, 4, -74304, 0), (7, 0, 164, 0), (7, 1, 0, -320), (7, 2, -4608, 0), (7, 3, 0, 19200), (7, 4, -62784, 0)),
        ((((0, 0, 1, 0), (1, 0, 2, 0)), 2), (((0, 0, -1, 0), (1, 0, 1, 0)), 2), (((0, 0, 0, 1), (0, 1, -6, 0)), 2), (((0, 0, 0, 1), (0, 1, 6, 0)), 2), (((0, 0, 2, 0), (1, 0, 1, 0)), 1)),
    ),
    "14": (
        1/18,
        ((2, 0, 54, 0), (2, 2, -3888, 0), (2, 3, 0, 15552), (2, 4, -48600, 0), (3, 0, 297, 0), (3, 1, 0, -384), (3, 2, -18576, 0), (3, 3, 0, 71712), (3, 4, -233712, 0), (4, 0, 601, 0), (4, 1, 0, -1072), (4, 2, -29520, 0), (4, 3, 0, 118176), (4, 4, -389304, 0), (5, 0, 488, 0), (5, 1, 0, -896), (5, 2, -20160, 0), (5, 3, 0, 81408), (5, 4, -267552, 0), (6, 0, 132, 0), (6, 1, 0, -192), (6, 2, -5184, 0), (6, 3, 0, 19584), (6, 4, -63072, 0)),
        ((((0, 0, 1, 0), (1, 0, 2, 0)), 2), (((0, 0, 0, 1), (0, 1, -6, 0)), 2), (((0, 0, 0, 1), (0, 1, 6, 0)), 2), (((0, 0, 1, 0), (1, 0, 1, 0)), 1), (((0, 0, 2, 0), (1, 0, 1, 0)), 1)),
    ),
    "15": (
        1,
        ((0, 4, -23328, 0), (1, 3, 0, 10368), (1, 4, -112752, 0), (2, 0, 54, 0), (2, 2, -9072, 0), (2, 3, 0, 51840), (2, 4, -270216, 0), (3, 0, 189, 0), (3, 2, -22032, 0), (3, 3, 0, 90720), (3, 4, -349920, 0), (4, 0, 191, 0), (4, 1, 0, 16), (4, 2, -18000, 0), (4, 3, 0, 64992), (4, 4, -219384, 0), (5, 0, 58, 0), (5, 1, 0, 32), (5, 2, -4896, 0), (5, 3, 0, 15936), (5, 4, -49968, 0)),
        ((((0, 0, 0, 1), (0, 1, -6, 0)), 2), (((0, 0, 0, 1), (0, 1, 6, 0)), 2), (((0, 0, 1, 0), (1, 0, 1, 0)), 1), (((0, 0, 1, 0), (1, 0, 2, 0)), 1), (((0, 0, 36, 0), (1, 0, 18, 0)), 1)),
    ),
    "16": (
        1,
        ((0, 4, -46656, 0), (1, 3, 0, 10368), (1, 4, -194400, 0), (2, 2, -2592, 0), (2, 3, 0, 46656), (2, 4, -307152, 0), (3, 0, 54, 0), (3, 1, 0, 96), (3, 2, -17712, 0), (3, 3, 0, 88992), (3, 4, -356616, 0), (4, 0, 185, 0), (4, 1, 0, 304), (4, 2, -29880, 0), (4, 3, 0, 103728), (4, 4, -368100, 0), (5, 0, 179, 0), (5, 1, 0, 256), (5, 2, -19944, 0), (5, 3, 0, 66864), (5, 4, -221220, 0), (6, 0, 50, 0), (6, 1, 0, 64), (6, 2, -5040, 0), (6, 3, 0, 16032), (6, 4, -50040, 0)),
        ((((1, 0, 1, 0),), 1), (((0, 0, 0, 1), (0, 1, -6, 0)), 2), (((0, 0, 0, 1), (0, 1, 6, 0)), 2), (((0, 0, 1, 0), (1, 0, 2, 0)), 1), (((0, 0, 2, 0), (1, 0, 1, 0)), 1), (((0, 0, 18, 0), (1, 0, 18, 0)), 1)),
    ),
    "17": (
        1/2,
        ((0, 4, 5184, 0), (1, 4, 14256, 0), (2, 0, 6, 0), (2, 2, -864, 0), (2, 3, 0, 1440), (2, 4, 648, 0), (3, 0, 15, 0), (3, 2, -1080, 0), (3, 3, 0, 3600), (3, 4, -11340, 0), (4, 0, 6, 0), (4, 2, -432, 0), (4, 3, 0, 1440), (4, 4, -4536, 0)),
        ((((0, 0, 0, 1), (0, 1, -6, 0)), 2), (((0, 0, 0, 1), (0, 1, 6, 0)), 2), (((0, 0, 1, 0), (1, 0, 2, 0)), 1), (((0, 0, 2, 0), (1, 0, 1, 0)), 1)),
    ),
    "31": (
        1/18,
        ((2, 0, 9, 0), (3, 0, 5, 0), (4, 0, 1, 0)),
        ((((0, 0, 2, 0), (1, 0, 1, 0)), 2),),
    ),
    "32": (
        -1,
        ((1, 4, -2916, 0), (2, 0, 9, 0), (2, 1, 0, -36), (2, 2, 162, 0), (2, 3, 0, 2484), (2, 4, -10611, 0), (3, 0, 23, 0), (3, 1, 0, -92), (3, 2, -2178, 0), (3, 3, 0, 7500), (3, 4, -16074, 0), (4, 0, -25, 0), (4, 1, 0, 484), (4, 2, -6498, 0), (4, 3, 0, 9588), (4, 4, -13401, 0), (5, 0, -154, 0), (5, 1, 0, 1000), (5, 2, -6876, 0), (5, 3, 0, 6600), (5, 4, -6786, 0), (6, 0, -108, 0), (6, 1, 0, 528), (6, 2, -2808, 0), (6, 3, 0, 2160), (6, 4, -1836, 0), (7, 0, -24, 0), (7, 1, 0, 96), (7, 2, -432, 0), (7, 3, 0, 288), (7, 4, -216, 0)),
        ((((0, 0, 1, 0), (1, 0, 2, 0)), 2), (((0, 0, 2, 0), (1, 0, 1, 0)), 2), (((0, 0, 0, 1), (0, 1, -3, 0)), 4), (((0, 0, -2, 0), (1, 0, 4, 0)), 1)),
    ),
}


def _dense(terms):
    deg_t = max(t[0] for t in terms)
    deg_e = max(t[1] for t in terms)
    c = np.zeros((deg_t + 1, deg_e + 1))
    for i, j, a, b in terms:
        c[i, j] += a + b * _SQ3
    # highest powers first for Horner
    return c[::-1, ::-1].tolist()


def _compile(table):
    out = {}
    for key, (scale, num, den) in table.items():
        out[key] = (float(scale), _dense(num), [(_dense(f), p) for f, p in den])
    return out


def _horner2(rows, tau, eps):
    acc = 0.0
    for row in rows:
        inner = 0.0
        for c in row:
            inner = inner * eps + c
        acc = acc * tau + inner
    return acc


def evaluate(cell, tau, eps):
    scale, num, den = cell
    d = 1.0
    for f, p in den:
        d *= _horner2(f, tau, eps) ** p
    return scale * _horner2(num, tau, eps) / d


def near_pole(cell, tau, eps, tol=1e-4):
    """True when a denominator factor is close to zero.  The cells only
    have removable singularities on their closure, but the rational form
    loses digits there."""
    return any(abs(_horner2(f, tau, eps)) < tol for f, _ in cell[2])


SEG_CELLS = _compile(SEGREGATION)
ASSOC_CELLS = _compile(ASSOCIATION)

"""Frozen numeric goldens for the worked drawing-tutorial fragment.

The similarity matrix, its reference centrality row, the per-topic API
probabilities and the fragment's topic mixture are the published worked
example this implementation is checked against. Expected scores were
verified by direct hand evaluation of the formulas over these inputs.
"""

SIMILARITY_MATRIX = [
    [0.0000, 0.1573, 0.1759, 0.2580, 0.2018, 0.0706, 0.3419, 0.1207, 0.2060, 0.0000, 0.2006],
    [0.1573, 0.0000, 0.1015, 0.0766, 0.0782, 0.1465, 0.1015, 0.1252, 0.2137, 0.0000, 0.2081],
    [0.1759, 0.1015, 0.0000, 0.1628, 0.3227, 0.1058, 0.2157, 0.1808, 0.3086, 0.0000, 0.3005],
    [0.2580, 0.0766, 0.1628, 0.0000, 0.1697, 0.0799, 0.5480, 0.3802, 0.2330, 0.2423, 0.4660],
    [0.2018, 0.0782, 0.3227, 0.1697, 0.0000, 0.0815, 0.2249, 0.1394, 0.2379, 0.0000, 0.2317],
    [0.0706, 0.1465, 0.1058, 0.0799, 0.0815, 0.0000, 0.1058, 0.1306, 0.2227, 0.0000, 0.2169],
    [0.3419, 0.1015, 0.2157, 0.5480, 0.2249, 0.1058, 0.0000, 0.5038, 0.3087, 0.3864, 0.6175],
    [0.1207, 0.1252, 0.1808, 0.3802, 0.1394, 0.1306, 0.5038, 0.0000, 0.3809, 0.3961, 0.7618],
    [0.2060, 0.2137, 0.3086, 0.2330, 0.2379, 0.2227, 0.3087, 0.3809, 0.0000, 0.0000, 0.6329],
    [0.0000, 0.0000, 0.0000, 0.2423, 0.0000, 0.0000, 0.3864, 0.3961, 0.0000, 0.0000, 0.3887],
    [0.2006, 0.2081, 0.3005, 0.4660, 0.2317, 0.2169, 0.6175, 0.7618, 0.6329, 0.3887, 0.0000],
]

REFERENCE_PAGERANK = [
    0.8018, 0.6062, 0.8563, 1.1264, 0.7846, 0.5857,
    1.4106, 1.3163, 1.1869, 0.6559, 1.6694,
]

# P(api | topic) rows over five topics.
TOPIC_API_PROBABILITIES = {
    "canvas": [0.0002, 0.0360, 0.0000, 0.4270, 0.0000],
    "bitmap": [0.0000, 0.0000, 0.0000, 0.3360, 0.0005],
    "surfaceholder": [0.0001, 0.0481, 0.0000, 0.0054, 0.0000],
    "surfaceview": [0.0023, 0.0336, 0.0000, 0.0005, 0.0000],
}

FRAGMENT_MIXTURE = [0.04, 0.01, 0.02, 0.92, 0.01]

EXPECTED_TOPIC_SCORES = {
    "Canvas": 0.39321,
    "Bitmap": 0.30913,
    "SurfaceHolder": 0.00545,
    "SurfaceView": 0.00089,
}

# Sentence ordinals (1..11) containing each API after resolution.
API_SENTENCES = {
    "Canvas": [1, 2, 3, 4, 5, 6, 7, 8, 9, 11],
    "Bitmap": [4, 7, 8, 10, 11],
    "SurfaceHolder": [6],
    "SurfaceView": [6],
}

EXPECTED_PAGERANK_SCORES = {
    "Canvas": 0.9404,
    "Bitmap": 0.5617,
    "SurfaceHolder": 0.0532,
    "SurfaceView": 0.0532,
}

EXPECTED_NORM_TOPIC = {
    "Canvas": 1.0,
    "Bitmap": 0.7862,
    "SurfaceHolder": 0.0139,
    "SurfaceView": 0.0023,
}

EXPECTED_NORM_PAGERANK = {
    "Canvas": 1.0,
    "Bitmap": 0.5973,
    "SurfaceHolder": 0.0566,
    "SurfaceView": 0.0566,
}

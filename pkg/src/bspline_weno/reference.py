"""
Published reference values for the standard benchmark tables.

Keys of each table's ``rows`` are ``"linear"`` (classical spline) or a psi
kind ``"s"``, ``"c"``, ``"d"``. ``errors`` run over the table's levels;
``orders[i]`` belongs to level i (``None`` at the coarsest level).
"""

COEFFICIENTS = {
    1: {0: (1, 1)},
    2: {0: (5, 4), 1: (-1, 8)},
    3: {0: (4, 3), 1: (-1, 6)},
    4: {0: (319, 192), 1: (-107, 288), 2: (47, 1152)},
    5: {0: (73, 40), 1: (-7, 15), 2: (13, 240)},
}


def _row(errors, orders):
    return {"errors": list(errors), "orders": [None] + list(orders)}


SMOOTH_LEVELS = list(range(4, 11))
JUMP_LEVELS = list(range(4, 14))

TABLES = {
    2: {
        "degree": 2, "kind": "smooth", "levels": SMOOTH_LEVELS,
        "rows": {
            "s": _row([2.1439e-02, 3.1585e-03, 2.9446e-04, 2.0690e-05, 1.3538e-06, 8.9398e-08, 6.0681e-09],
                      [2.763, 3.423, 3.831, 3.934, 3.921, 3.881]),
            "c": _row([6.2029e-03, 2.0395e-04, 9.5224e-06, 6.6798e-07, 6.5957e-08, 7.6283e-09, 9.3011e-10],
                      [4.927, 4.421, 3.833, 3.34, 3.112, 3.036]),
            "d": _row([8.0140e-03, 2.0957e-04, 9.5404e-06, 6.6805e-07, 6.5957e-08, 7.6283e-09, 9.3011e-10],
                      [5.257, 4.457, 3.836, 3.34, 3.112, 3.036]),
            "linear": _row([4.1225e-04, 3.9638e-05, 4.3232e-06, 5.0409e-07, 6.0818e-08, 7.4674e-09, 9.2508e-10],
                           [3.379, 3.197, 3.1, 3.051, 3.026, 3.013]),
        },
    },
    3: {
        "degree": 3, "kind": "smooth", "levels": SMOOTH_LEVELS,
        "rows": {
            "s": _row([5.7275e-03, 4.4580e-04, 1.1572e-04, 1.5515e-05, 1.3342e-06, 9.6355e-08, 6.4480e-09],
                      [3.6834, 1.9457, 2.8990, 3.5396, 3.7914, 3.9014]),
            "c": _row([3.8744e-04, 9.4390e-06, 2.6245e-06, 1.6338e-07, 7.6510e-09, 3.4392e-10, 1.6146e-11],
                      [5.359, 1.847, 4.006, 4.416, 4.476, 4.413]),
            "d": _row([3.9653e-04, 9.4891e-06, 2.6288e-06, 1.6342e-07, 7.6513e-09, 3.4392e-10, 1.6147e-11],
                      [5.385, 1.852, 4.008, 4.417, 4.476, 4.413]),
            "linear": _row([1.0716e-04, 8.6705e-06, 5.9865e-07, 3.9087e-08, 2.4935e-09, 1.5740e-10, 9.8859e-12],
                           [3.6275, 3.8563, 3.9370, 3.9704, 3.9857, 3.9929]),
        },
    },
    4: {
        "degree": 4, "kind": "smooth", "levels": SMOOTH_LEVELS,
        "rows": {
            "s": _row([2.5613e-04, 7.5817e-07, 2.5238e-09, 1.1877e-11, 1.4899e-13, 4.8850e-15, 1.1102e-15],
                      [8.4, 8.231, 7.731, 6.317, 4.931, 2.138]),
            "c": _row([1.6809e-05, 1.8213e-08, 2.2147e-10, 5.7438e-12, 1.5721e-13, 4.8850e-15, 1.1102e-15],
                      [9.85, 6.362, 5.269, 5.191, 5.008, 2.138]),
            "d": _row([1.6823e-05, 1.8214e-08, 2.2147e-10, 5.7438e-12, 1.5721e-13, 4.8850e-15, 1.1102e-15],
                      [9.851, 6.362, 5.269, 5.191, 5.008, 2.138]),
            "linear": _row([7.0262e-07, 1.1659e-08, 2.4046e-10, 5.8173e-12, 1.5743e-13, 4.8850e-15, 1.1102e-15],
                           [5.913, 5.599, 5.369, 5.208, 5.01, 2.138]),
        },
    },
    5: {
        "degree": 5, "kind": "smooth", "levels": SMOOTH_LEVELS,
        "rows": {
            "s": _row([3.0918e-04, 9.0968e-07, 3.0077e-09, 9.5293e-12, 3.9302e-14, 1.5543e-15, 8.8818e-16],
                      [8.4089, 8.2406, 8.3021, 7.9216, 4.6603, 8.0735e-01]),
            "c": _row([2.0187e-05, 2.0353e-08, 1.4261e-10, 1.9957e-12, 3.1086e-14, 1.5543e-15, 1.1102e-15],
                      [9.954, 7.157, 6.159, 6.005, 4.322, 0.4854]),
            "d": _row([2.0204e-05, 2.0353e-08, 1.4261e-10, 1.9957e-12, 3.1086e-14, 1.5543e-15, 1.1102e-15],
                      [9.955, 7.157, 6.159, 6.005, 4.322, 0.4854]),
            "linear": _row([7.2832e-07, 9.3475e-09, 1.3269e-10, 1.9780e-12, 3.1308e-14, 1.3323e-15, 1.1102e-15],
                           [6.2838, 6.1385, 6.0679, 5.9813, 4.5546, 2.6303e-01]),
        },
    },
    6: {
        "degree": 2, "kind": "jump", "levels": JUMP_LEVELS,
        "rows": {
            "s": _row([5.4615e-02, 2.7978e-02, 1.3927e-02, 6.9191e-03, 3.4449e-03, 1.7184e-03, 8.5812e-04,
                       4.2879e-04, 2.1432e-04, 1.0714e-04],
                      [0.965, 1.006, 1.009, 1.006, 1.003, 1.002, 1.001, 1, 1]),
            "c": _row([4.3329e-02, 2.9412e-02, 1.8279e-02, 1.0507e-02, 5.6976e-03, 2.9776e-03, 1.5237e-03,
                       7.7091e-04, 3.8777e-04, 1.9447e-04],
                      [0.5589, 0.6862, 0.7989, 0.8829, 0.9362, 0.9666, 0.9829, 0.9914, 0.9956]),
            "d": _row([6.0303e-02, 2.7966e-02, 1.3823e-02, 6.8839e-03, 3.4350e-03, 1.7158e-03, 8.5745e-04,
                       4.2862e-04, 2.1428e-04, 1.0713e-04],
                      [1.109, 1.017, 1.006, 1.003, 1.001, 1.001, 1, 1, 1]),
        },
    },
    7: {
        "degree": 3, "kind": "jump", "levels": JUMP_LEVELS,
        "rows": {
            "s": _row([6.4613e-02, 3.2117e-02, 1.5988e-02, 7.9734e-03, 3.9812e-03, 1.9892e-03, 9.9425e-04,
                       4.9704e-04, 2.4850e-04, 1.2424e-04],
                      [1.008, 1.006, 1.004, 1.002, 1.001, 1.001, 1, 1, 1]),
            "c": _row([5.7789e-02, 2.8948e-02, 1.4497e-02, 7.2559e-03, 3.6302e-03, 1.8157e-03, 9.0799e-04,
                       4.5404e-04, 2.2703e-04, 1.1352e-04],
                      [0.9973, 0.9978, 0.9985, 0.9991, 0.9995, 0.9998, 0.9999, 0.9999, 1]),
            "d": _row([6.4763e-02, 3.2233e-02, 1.6013e-02, 7.9793e-03, 3.9826e-03, 1.9896e-03, 9.9434e-04,
                       4.9706e-04, 2.4850e-04, 1.2424e-04],
                      [1.007, 1.009, 1.005, 1.003, 1.001, 1.001, 1, 1, 1]),
        },
    },
    8: {
        "degree": 4, "kind": "jump", "levels": JUMP_LEVELS,
        "rows": {
            kind: _row([7.0655e-02, 5.1394e-02, 3.9749e-02, 3.1339e-02, 2.3823e-02, 1.6675e-02, 1.0554e-02,
                        6.1095e-03, 3.3201e-03, 1.7359e-03],
                       [0.4592, 0.3707, 0.3429, 0.3956, 0.5147, 0.6599, 0.7886, 0.8799, 0.9355])
            for kind in ("s", "c", "d")
        },
    },
    9: {
        "degree": 5, "kind": "jump", "levels": JUMP_LEVELS,
        "rows": {
            "s": _row([1.0267e-01, 5.6743e-02, 2.8517e-02, 1.4064e-02, 6.9536e-03, 3.4536e-03, 1.7206e-03,
                       8.5866e-04, 4.2892e-04, 2.1436e-04],
                      [0.85548, 0.99262, 1.0198, 1.0162, 1.0097, 1.0052, 1.0027, 1.0014, 1.0007]),
            "c": _row([8.8985e-02, 6.5004e-02, 4.7851e-02, 3.3716e-02, 2.1894e-02, 1.3017e-02, 7.2131e-03,
                       3.8165e-03, 1.9660e-03, 9.9813e-04],
                      [0.45304, 0.44199, 0.50511, 0.62287, 0.75013, 0.85174, 0.91836, 0.95702, 0.97793]),
            "d": _row([1.1271e-01, 5.5344e-02, 2.7521e-02, 1.3738e-02, 6.8626e-03, 3.4297e-03, 1.7144e-03,
                       8.5712e-04, 4.2853e-04, 2.1426e-04],
                      [1.0261, 1.0079, 1.0024, 1.0013, 1.0007, 1.0003, 1.0002, 1.0001, 1]),
        },
    },
}

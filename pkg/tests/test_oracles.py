from oracles import brute_count, series_count


def test_brute_and_series_oracles_agree():
    for parts in [(1, 2, 4), (2, 3), (1, 2, 2, 3, 3), (3, 5)]:
        table = series_count(parts, 40)
        assert [brute_count(parts, n) for n in range(41)] == table


def test_brute_count_hand_values():
    # 6 = 4+2 = 4+1+1 = 2+2+2 = 2+2+1+1 = 2+1*4 = 1*6
    assert brute_count((1, 2, 4), 6) == 6
    assert brute_count((3, 5), 8) == 1
    assert brute_count((3, 5), 7) == 0

"""Walk the small cells of F(i, j): sizes, error terms and a feedback set per member."""

from fvslab import family_fvs, generate_family
from fvslab.exact import min_fvs_exact


def main(cap=10):
    for j in range(cap // 3 + 1):
        for i in range(max(j, 1), cap - 3 * j + 1):
            members = generate_family(i, j, cap=cap)
            worst = 0
            for mem in members:
                s = family_fvs(mem)
                worst = max(worst, len(s) - min_fvs_exact(mem.graph).size)
            eps = members[0].signature.epsilon
            print(f"F({i},{j}): {len(members):4d} members, eps={str(eps):>3}, "
                  f"largest excess over optimum {worst}")


if __name__ == "__main__":
    main()

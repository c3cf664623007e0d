"""八元数代数、微分算子、等价方程组、显式解与 Cauchy 积分"""

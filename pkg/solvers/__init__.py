# Solvers package

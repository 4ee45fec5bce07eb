from numeric.evaluate import eval, evaluate_many, evaluate_polynomial, numeric_A, numeric_A_many
from numeric.verify import EquivReport, SamplePlan, check_equiv, cross_validate

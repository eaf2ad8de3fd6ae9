"""Extensions of discrete valuations via key polynomials."""

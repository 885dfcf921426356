success200 = "Successful Response"
error422 = "Unprocessable Input"
error400 = "Invalid problem data or parameters"
error500 = "Solver error"

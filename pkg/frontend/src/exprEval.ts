/** Evaluator for the scene JSON expression ASTs ({op, args} tagged objects). */

export interface ExprJson {
  op: string;
  args: unknown[];
}

export class UnboundParamError extends Error {
  constructor(public name: string) {
    super(`unbound parameter '${name}'`);
  }
}

export class DomainError extends Error {}

const BUILTINS: Record<string, number> = { pi: Math.PI, tau: 2 * Math.PI };

export type Env = Record<string, number>;

export function evalExpr(e: ExprJson, env: Env): number {
  switch (e.op) {
    case "const":
      return e.args[0] as number;
    case "param": {
      const name = e.args[0] as string;
      if (name in env) return env[name];
      if (name in BUILTINS) return BUILTINS[name];
      throw new UnboundParamError(name);
    }
    case "neg":
      return -evalExpr(e.args[0] as ExprJson, env);
    case "add":
      return evalExpr(e.args[0] as ExprJson, env) + evalExpr(e.args[1] as ExprJson, env);
    case "sub":
      return evalExpr(e.args[0] as ExprJson, env) - evalExpr(e.args[1] as ExprJson, env);
    case "mul":
      return evalExpr(e.args[0] as ExprJson, env) * evalExpr(e.args[1] as ExprJson, env);
    case "div": {
      const num = evalExpr(e.args[0] as ExprJson, env);
      const den = evalExpr(e.args[1] as ExprJson, env);
      if (den === 0) throw new DomainError("division by zero");
      return num / den;
    }
    case "pow":
      return evalExpr(e.args[0] as ExprJson, env) ** (e.args[1] as number);
    case "sin":
      return Math.sin(evalExpr(e.args[0] as ExprJson, env));
    case "cos":
      return Math.cos(evalExpr(e.args[0] as ExprJson, env));
    case "tan":
      return Math.tan(evalExpr(e.args[0] as ExprJson, env));
    case "sqrt": {
      const v = evalExpr(e.args[0] as ExprJson, env);
      if (v < 0) throw new DomainError(`sqrt of negative number ${v}`);
      return Math.sqrt(v);
    }
    case "abs":
      return Math.abs(evalExpr(e.args[0] as ExprJson, env));
    default:
      throw new DomainError(`unknown expression op '${e.op}'`);
  }
}
